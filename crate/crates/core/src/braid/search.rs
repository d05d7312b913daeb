//! Bounded breadth-first simplification of braid words under conjugation,
//! free reduction, braid relations and destabilization.
//!
//! The search is sound (every move preserves the transverse closure up to
//! the stated Bennequin change) but incomplete: it certifies unlinks when it
//! finds the empty word and otherwise reports the smallest word it reached.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::word::BraidWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Cancel `σ_i σ_i^{-1}` pairs, including across the word ends.
    FreeReduce,
    /// Conjugate by moving the first `by` letters to the end.
    Rotate { by: usize },
    /// `σ_i σ_j -> σ_j σ_i` for `|i - j| >= 2` at position `at`.
    Commute { at: usize },
    /// `σ_i σ_{i±1} σ_i -> σ_{i±1} σ_i σ_{i±1}` (equal signs) at position `at`.
    BraidRelation { at: usize },
    /// Remove a trivial loop on the last strand.
    Destabilize { sign: i8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub word: BraidWord,
    pub moves: Vec<Move>,
    /// True when the expansion budget ran out before the search space did.
    pub exhausted: bool,
    pub expanded: usize,
}

fn successors(w: &BraidWord) -> Vec<(Move, BraidWord)> {
    let mut out = Vec::new();
    let reduced = w.cyclic_reduce();
    if reduced.len() != w.len() {
        out.push((Move::FreeReduce, reduced));
    }
    for sign in [1i8, -1] {
        if let Some(d) = w.destabilize(sign) {
            out.push((Move::Destabilize { sign }, d));
        }
    }
    let letters = w.letters();
    for by in 1..letters.len() {
        out.push((Move::Rotate { by }, w.rotate(by)));
    }
    for at in 0..letters.len().saturating_sub(1) {
        let (a, b) = (letters[at], letters[at + 1]);
        if a.index.abs_diff(b.index) >= 2 {
            let mut next = letters.to_vec();
            next.swap(at, at + 1);
            out.push((Move::Commute { at }, BraidWord::from_parts_unchecked(w.strands(), next)));
        }
    }
    for at in 0..letters.len().saturating_sub(2) {
        let (a, b, c) = (letters[at], letters[at + 1], letters[at + 2]);
        if a == c && a.sign == b.sign && a.index.abs_diff(b.index) == 1 {
            let mut next = letters.to_vec();
            next[at] = b;
            next[at + 1] = a;
            next[at + 2] = b;
            out.push((Move::BraidRelation { at }, BraidWord::from_parts_unchecked(w.strands(), next)));
        }
    }
    out
}

/// Searches for the canonically smallest word reachable from `b` by at most
/// `budget` node expansions. Ordering is strand count, then length, then
/// lexicographic on `(index, sign)`.
pub fn exchange_reduce(b: &BraidWord, budget: usize) -> ReductionResult {
    let start = b.clone();
    let mut parent: HashMap<BraidWord, (BraidWord, Move)> = HashMap::new();
    let mut seen: HashSet<BraidWord> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    let mut best = start.clone();
    let mut expanded = 0;

    while let Some(w) = queue.pop_front() {
        if expanded >= budget {
            queue.push_front(w);
            break;
        }
        expanded += 1;
        for (mv, next) in successors(&w) {
            if seen.insert(next.clone()) {
                if next.canonical_cmp(&best).is_lt() {
                    best = next.clone();
                }
                parent.insert(next.clone(), (w.clone(), mv));
                queue.push_back(next);
            }
        }
    }

    let mut moves = Vec::new();
    let mut cur = best.clone();
    while let Some((prev, mv)) = parent.get(&cur) {
        moves.push(*mv);
        cur = prev.clone();
    }
    moves.reverse();
    ReductionResult { word: best, moves, exhausted: !queue.is_empty(), expanded }
}

/// Replays a move log from `start`; used to audit search results.
pub fn replay(start: &BraidWord, moves: &[Move]) -> Option<BraidWord> {
    let mut w = start.clone();
    for mv in moves {
        w = successors(&w).into_iter().find(|(m, _)| m == mv).map(|(_, next)| next)?;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32, s: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, s).unwrap()
    }

    #[test]
    fn unlink_of_two_components_reduces_to_empty() {
        let r = exchange_reduce(&w(3, &[1, -1, 2]), 1000);
        assert_eq!(r.word, BraidWord::identity(2));
        assert!(!r.exhausted);
        assert_eq!(replay(&w(3, &[1, -1, 2]), &r.moves), Some(r.word.clone()));
    }

    #[test]
    fn single_stabilized_unknot() {
        let r = exchange_reduce(&w(2, &[1]), 10);
        assert_eq!(r.word, BraidWord::identity(1));
        assert_eq!(r.moves, vec![Move::Destabilize { sign: 1 }]);
    }

    #[test]
    fn trefoil_is_left_alone() {
        let r = exchange_reduce(&w(2, &[1, 1, 1]), 1000);
        assert_eq!(r.word, w(2, &[1, 1, 1]));
        assert!(r.moves.is_empty());
        assert!(!r.exhausted);
    }

    #[test]
    fn needs_braid_relation_to_destabilize() {
        // σ1 σ2 σ1 σ2^-1 σ1^-1 = σ2, a two-component unlink
        let start = w(3, &[1, 2, 1, -2, -1]);
        let r = exchange_reduce(&start, 5000);
        assert_eq!(r.word, BraidWord::identity(2));
        assert_eq!(replay(&start, &r.moves), Some(r.word));
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let r = exchange_reduce(&w(4, &[1, 2, 3, 1, 2, 3]), 1);
        assert!(r.exhausted);
        assert_eq!(r.expanded, 1);
    }
}
