use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidError;

/// One braid generator `σ_i^{±1}`; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub sign: i8,
}

impl Letter {
    pub fn pos(index: u32) -> Self {
        Letter { index, sign: 1 }
    }

    pub fn neg(index: u32) -> Self {
        Letter { index, sign: -1 }
    }

    pub fn new(index: u32, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: -self.sign }
    }

    /// Wire encoding: `σ_i -> +i`, `σ_i^{-1} -> -i`.
    pub fn to_signed(self) -> i64 {
        self.sign as i64 * self.index as i64
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign == -other.sign
    }
}

/// A word in the Artin generators of the braid group on `strands` strands.
///
/// The empty word is the identity braid. Every letter index lies in
/// `1..strands`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Parameter("braid needs at least one strand".into()));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands || l.sign.abs() != 1) {
            return Err(BraidError::Parameter(format!(
                "letter {} out of range for {} strands",
                bad.to_signed(),
                strands
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: u32) -> Self {
        assert!(strands >= 1);
        BraidWord { strands, letters: Vec::new() }
    }

    /// Builds from the signed-integer wire encoding.
    pub fn from_signed(strands: u32, word: &[i64]) -> Result<Self, BraidError> {
        let mut letters = Vec::with_capacity(word.len());
        for &w in word {
            if w == 0 || w.unsigned_abs() > u32::MAX as u64 {
                return Err(BraidError::Parameter(format!("invalid letter {w}")));
            }
            letters.push(Letter::new(w.unsigned_abs() as u32, if w > 0 { 1 } else { -1 }));
        }
        Self::new(strands, letters)
    }

    pub(crate) fn from_parts_unchecked(strands: u32, letters: Vec<Letter>) -> Self {
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Algebraic length: sum of the letter exponents.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign > 0)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::Parameter("strand counts differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Negates every letter sign.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    pub fn power(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Cyclic rotation: moves the first `k` letters to the end (conjugation).
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Embeds into the braid group on `strands` strands (`strands >= self.strands()`).
    pub fn with_strands(&self, strands: u32) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Removes adjacent `σ_i σ_i^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Free reduction followed by cancellation across the ends of the word.
    pub fn cyclic_reduce(&self) -> BraidWord {
        let mut w = self.free_reduce().letters;
        while w.len() >= 2 && w[0].cancels(*w.last().unwrap()) {
            w.pop();
            w.remove(0);
        }
        BraidWord { strands: self.strands, letters: w }
    }

    /// Permutation of strand positions: `perm[i]` is the bottom position of
    /// the strand starting at top position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let n = self.strands as usize;
        // track which strand occupies each position
        let mut occupant: Vec<usize> = (0..n).collect();
        for l in &self.letters {
            let i = l.index as usize - 1;
            occupant.swap(i, i + 1);
        }
        let mut perm = vec![0; n];
        for (pos, &strand) in occupant.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        cycle_count(&self.permutation())
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// Removes a trivial loop on the last strand.
    ///
    /// Applies when some rotation of the word equals `u · σ_{n-1}^{sign}` with
    /// `σ_{n-1}` not occurring in `u`; returns `u` on `n - 1` strands.
    pub fn destabilize(&self, sign: i8) -> Option<BraidWord> {
        let n = self.strands;
        if n < 2 {
            return None;
        }
        let top = n - 1;
        let mut hits = self.letters.iter().enumerate().filter(|(_, l)| l.index == top);
        let (pos, letter) = hits.next()?;
        if hits.next().is_some() || letter.sign != sign {
            return None;
        }
        let rotated = self.rotate(pos + 1);
        let mut letters = rotated.letters;
        letters.pop();
        Some(BraidWord { strands: n - 1, letters })
    }

    /// Adds a new strand and a trailing `σ_n^{sign}` (inverse of [`destabilize`](Self::destabilize)).
    pub fn stabilize(&self, sign: i8) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.strands, sign));
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Total order used to pick canonical representatives:
    /// strand count, then length, then lexicographic on (index, sign).
    pub fn canonical_cmp(&self, other: &BraidWord) -> Ordering {
        self.strands
            .cmp(&other.strands)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

pub(crate) fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1 (B{})", self.strands);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.sign > 0 {
                write!(f, "s{}", l.index)?;
            } else {
                write!(f, "s{}^-1", l.index)?;
            }
        }
        write!(f, " (B{})", self.strands)
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

/// Wire format: `{"n": strands, "w": [signed letters]}`.
#[derive(Serialize, Deserialize)]
struct BraidWire {
    n: u32,
    w: Vec<i64>,
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BraidWire { n: self.strands, w: self.to_signed() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = BraidWire::deserialize(d)?;
        BraidWord::from_signed(wire.n, &wire.w).map_err(serde::de::Error::custom)
    }
}

/// `(σ_{p-1} ··· σ_1)^{|q|}` on `p` strands, every letter with sign
/// `e · sign(q)`. Its closure is the `(p, q)` torus knot or link.
pub fn torus_braid(p: u32, q: i64, e: i8) -> Result<BraidWord, BraidError> {
    if p < 1 {
        return Err(BraidError::Parameter("torus braid needs p >= 1".into()));
    }
    if e != 1 && e != -1 {
        return Err(BraidError::Parameter("orientation must be +1 or -1".into()));
    }
    let sign = if q < 0 { -e } else { e };
    let block: Vec<Letter> = (1..p).rev().map(|i| Letter::new(i, sign)).collect();
    let mut letters = Vec::with_capacity(block.len() * q.unsigned_abs() as usize);
    for _ in 0..q.unsigned_abs() {
        letters.extend_from_slice(&block);
    }
    Ok(BraidWord { strands: p, letters })
}
