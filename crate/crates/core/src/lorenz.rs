//! Lorenz equations, symbolic lobe coding of trajectories and the template
//! construction of positive braids from periodic `L`/`R` words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::braid::{BraidWord, Letter};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LorenzError {
    #[error("invalid Lorenz parameter: {0}")]
    Parameter(String),
    #[error("invalid symbol word: {0}")]
    Word(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LorenzParams {
    pub sigma: f64,
    pub b: f64,
    pub r: f64,
}

impl Default for LorenzParams {
    fn default() -> Self {
        LorenzParams { sigma: 10.0, b: 8.0 / 3.0, r: 24.0 }
    }
}

impl LorenzParams {
    pub fn with_r(r: f64) -> Self {
        LorenzParams { r, ..Self::default() }
    }

    pub fn velocity(&self, [x, y, z]: [f64; 3]) -> [f64; 3] {
        [self.sigma * (y - x), x * (self.r - z) - y, x * y - self.b * z]
    }

    /// The two nontrivial equilibria `(±√(b(r-1)), ±√(b(r-1)), r-1)` for `r > 1`.
    pub fn fixed_points(&self) -> Option<([f64; 3], [f64; 3])> {
        if self.r <= 1.0 {
            return None;
        }
        let c = (self.b * (self.r - 1.0)).sqrt();
        Some(([c, c, self.r - 1.0], [-c, -c, self.r - 1.0]))
    }

    fn validate(&self) -> Result<(), LorenzError> {
        let ok = [self.sigma, self.b, self.r].iter().all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(LorenzError::Parameter(format!("sigma, b, r must be positive, got {self:?}")))
        }
    }
}

/// Uniformly sampled trajectory starting at `t = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorenzTrajectory {
    pub dt: f64,
    pub points: Vec<[f64; 3]>,
}

impl LorenzTrajectory {
    pub fn from_samples(dt: f64, points: Vec<[f64; 3]>) -> Self {
        LorenzTrajectory { dt, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn max_abs_z(&self) -> f64 {
        self.points.iter().map(|p| p[2].abs()).fold(0.0, f64::max)
    }

    pub fn slice(&self, from: usize, to_inclusive: usize) -> LorenzTrajectory {
        LorenzTrajectory { dt: self.dt, points: self.points[from..=to_inclusive].to_vec() }
    }
}

fn rk4(params: &LorenzParams, p: [f64; 3], dt: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], s: f64| -> [f64; 3] { std::array::from_fn(|i| a[i] + s * b[i]) };
    let k1 = params.velocity(p);
    let k2 = params.velocity(add(p, k1, dt / 2.0));
    let k3 = params.velocity(add(p, k2, dt / 2.0));
    let k4 = params.velocity(add(p, k3, dt));
    std::array::from_fn(|i| p[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Fixed-step RK4; `steps + 1` samples including `x0`.
pub fn integrate_lorenz(
    params: &LorenzParams,
    x0: [f64; 3],
    dt: f64,
    steps: usize,
) -> Result<LorenzTrajectory, LorenzError> {
    params.validate()?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(LorenzError::Parameter(format!("dt must be positive, got {dt}")));
    }
    if x0.iter().any(|c| !c.is_finite()) {
        return Err(LorenzError::Parameter(format!("non-finite initial point {x0:?}")));
    }
    let mut points = Vec::with_capacity(steps + 1);
    let mut p = x0;
    points.push(p);
    for _ in 0..steps {
        p = rk4(params, p, dt);
        if p.iter().any(|c| !c.is_finite()) {
            return Err(LorenzError::Parameter("integration diverged; reduce dt".into()));
        }
        points.push(p);
    }
    Ok(LorenzTrajectory { dt, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    L,
    R,
}

impl Symbol {
    pub fn swap(self) -> Self {
        match self {
            Symbol::L => Symbol::R,
            Symbol::R => Symbol::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::R => 'R',
        }
    }
}

/// A local maximum of `z`, refined by a parabola through three samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LobeEvent {
    /// Sample index closest to the maximum.
    pub index: usize,
    pub time: f64,
    pub point: [f64; 3],
    #[serde(serialize_with = "ser_symbol", deserialize_with = "de_symbol")]
    pub symbol: Symbol,
}

fn ser_symbol<S: Serializer>(s: &Symbol, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_char(s.as_char())
}

fn de_symbol<'de, D: Deserializer<'de>>(d: D) -> Result<Symbol, D::Error> {
    match char::deserialize(d)? {
        'L' => Ok(Symbol::L),
        'R' => Ok(Symbol::R),
        c => Err(serde::de::Error::custom(format!("bad symbol {c:?}"))),
    }
}

/// All local maxima of `z` along the trajectory, in time order.
pub fn lobe_events(traj: &LorenzTrajectory) -> Vec<LobeEvent> {
    let pts = &traj.points;
    let mut out = Vec::new();
    for k in 1..pts.len().saturating_sub(1) {
        let (zm, z0, zp) = (pts[k - 1][2], pts[k][2], pts[k + 1][2]);
        // forward difference turns from positive to non-positive at k
        if !(z0 - zm > 0.0 && zp - z0 <= 0.0) {
            continue;
        }
        let curvature = zm - 2.0 * z0 + zp;
        let s = if curvature < 0.0 { (0.5 * (zm - zp) / curvature).clamp(-1.0, 1.0) } else { 0.0 };
        let point: [f64; 3] = std::array::from_fn(|i| {
            let (a, b, c) = (pts[k - 1][i], pts[k][i], pts[k + 1][i]);
            b + 0.5 * s * (c - a) + 0.5 * s * s * (a - 2.0 * b + c)
        });
        if point[0] == 0.0 {
            continue;
        }
        let symbol = if point[0] < 0.0 { Symbol::L } else { Symbol::R };
        out.push(LobeEvent { index: k, time: (k as f64 + s) * traj.dt, point, symbol });
    }
    out
}

/// Symbol sequence of [`lobe_events`], in time order.
pub fn lobe_encoding(traj: &LorenzTrajectory) -> Vec<Symbol> {
    lobe_events(traj).into_iter().map(|e| e.symbol).collect()
}

pub fn symbols_to_string(s: &[Symbol]) -> String {
    s.iter().map(|c| c.as_char()).collect()
}

/// Cyclic word over `{L, R}` kept in its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolWord {
    letters: Vec<Symbol>,
}

fn least_rotation(s: &[Symbol]) -> Vec<Symbol> {
    let n = s.len();
    (0..n)
        .map(|k| s[k..].iter().chain(&s[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl SymbolWord {
    pub fn cyclic(letters: &[Symbol]) -> Self {
        SymbolWord { letters: least_rotation(letters) }
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length of the shortest `u` with `self = u^m`.
    pub fn period(&self) -> usize {
        let n = self.letters.len();
        (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| self.letters[i] == self.letters[i % d]))
            .unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && self.period() == self.len()
    }

    pub fn swapped(&self) -> Self {
        let s: Vec<Symbol> = self.letters.iter().map(|c| c.swap()).collect();
        SymbolWord::cyclic(&s)
    }

    /// Number of maximal cyclic `L` blocks followed by an `R` block; a
    /// single-letter word counts as one.
    pub fn trip_number(&self) -> usize {
        let n = self.letters.len();
        let blocks = (0..n).filter(|&i| self.letters[i] == Symbol::L && self.letters[(i + 1) % n] == Symbol::R).count();
        blocks.max(usize::from(n > 0))
    }

    /// Every primitive cyclic word of length `1..=max_len`.
    pub fn all_primitive(max_len: usize) -> Vec<SymbolWord> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for bits in 0u64..(1 << len) {
                let s: Vec<Symbol> =
                    (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 0 { Symbol::L } else { Symbol::R }).collect();
                if least_rotation(&s) == s {
                    let w = SymbolWord { letters: s };
                    if w.is_primitive() {
                        out.push(w);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.letters))
    }
}

impl FromStr for SymbolWord {
    type Err = LorenzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Symbol::L),
                'R' | 'r' => Ok(Symbol::R),
                other => Err(LorenzError::Word(format!("unexpected character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymbolWord::cyclic(&letters))
    }
}

impl Serialize for SymbolWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloseReturn {
    pub start: f64,
    pub period: f64,
    pub start_index: usize,
    pub end_index: usize,
    pub word: SymbolWord,
}

/// Pairs of `z`-maximum events less than `eps` apart in phase space, with at
/// most `max_symbols` maxima between them. Each candidate carries the cyclic
/// word of the maxima in `[start, start + period)`.
pub fn close_return_candidates(traj: &LorenzTrajectory, eps: f64, max_symbols: usize) -> Vec<CloseReturn> {
    let events = lobe_events(traj);
    let mut out = Vec::new();
    if !(eps > 0.0) {
        return out;
    }
    for i in 0..events.len() {
        for j in i + 1..events.len().min(i + max_symbols + 1) {
            let (a, b) = (events[i].point, events[j].point);
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            if d < eps {
                let symbols: Vec<Symbol> = events[i..j].iter().map(|e| e.symbol).collect();
                out.push(CloseReturn {
                    start: events[i].time,
                    period: events[j].time - events[i].time,
                    start_index: events[i].index,
                    end_index: events[j].index,
                    word: SymbolWord::cyclic(&symbols),
                });
                break;
            }
        }
    }
    out
}

/// Re-encodes the samples of a candidate segment; should give back its word.
pub fn reencode(traj: &LorenzTrajectory, c: &CloseReturn) -> SymbolWord {
    let seg = traj.slice(c.start_index.saturating_sub(1), c.end_index);
    SymbolWord::cyclic(&lobe_encoding(&seg))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateBraid {
    pub braid: BraidWord,
    pub primitive: bool,
    /// Length of the primitive root; the closure has `len / period` components.
    pub period: usize,
}

/// Positive permutation braid of the periodic orbit with itinerary `w` on
/// the Lorenz template. The shifts of `w` are ordered lexicographically
/// (`L < R`); orbit point `s` moves to `s + 1`. A proper power `u^m` yields
/// `m` parallel copies of the orbit of `u`.
pub fn template_braid(w: &SymbolWord) -> Result<TemplateBraid, LorenzError> {
    if w.is_empty() {
        return Err(LorenzError::Word("empty word".into()));
    }
    let k = w.len();
    let d = w.period();
    let s = w.letters();
    let shift = |j: usize| -> Vec<Symbol> { s[j..].iter().chain(&s[..j]).copied().collect() };
    // points are (copy, j) with j < d; order by itinerary, then copy
    let mut pts: Vec<(Vec<Symbol>, usize, usize)> =
        (0..k).map(|idx| (shift(idx % d), idx / d, idx % d)).collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut pos = vec![vec![0usize; d]; k / d];
    for (p, (_, copy, j)) in pts.iter().enumerate() {
        pos[*copy][*j] = p;
    }
    let mut target = vec![0usize; k];
    for (copy, row) in pos.iter().enumerate() {
        for j in 0..d {
            target[row[j]] = pos[copy][(j + 1) % d];
        }
    }
    Ok(TemplateBraid { braid: permutation_braid(&target), primitive: d == k, period: d })
}

/// Positive braid in which the strand starting at position `i` ends at
/// `target[i]` and every pair of strands crosses at most once.
pub fn permutation_braid(target: &[usize]) -> BraidWord {
    let n = target.len().max(1) as u32;
    let mut cur = target.to_vec();
    let mut letters = Vec::new();
    // bubble sort swaps each inverted pair exactly once
    let mut swapped = true;
    while swapped {
        swapped = false;
        for j in 0..cur.len().saturating_sub(1) {
            if cur[j] > cur[j + 1] {
                cur.swap(j, j + 1);
                letters.push(Letter::pos(j as u32 + 1));
                swapped = true;
            }
        }
    }
    BraidWord::new(n, letters).expect("indices are below the strand count")
}

/// True when every letter is positive and no two strands cross twice.
pub fn is_positive_permutation_braid(b: &BraidWord) -> bool {
    if !b.is_positive() {
        return false;
    }
    let n = b.strands() as usize;
    let mut at: Vec<usize> = (0..n).collect();
    let mut crossed = std::collections::HashSet::new();
    for l in b.letters() {
        let i = l.index as usize - 1;
        let pair = (at[i].min(at[i + 1]), at[i].max(at[i + 1]));
        if !crossed.insert(pair) {
            return false;
        }
        at.swap(i, i + 1);
    }
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorenzInvariants {
    pub word: SymbolWord,
    pub components: usize,
    pub e: i64,
    pub n: i64,
    pub beta: i64,
    /// `(e - n + 1) / 2` for knot closures.
    pub genus: Option<i64>,
    pub trip_number: usize,
    pub positive: bool,
    pub primitive: bool,
}

pub fn lorenz_invariants(w: &SymbolWord) -> Result<LorenzInvariants, LorenzError> {
    let t = template_braid(w)?;
    let e = t.braid.exponent_sum();
    let n = t.braid.strands() as i64;
    let components = t.braid.closure_components();
    Ok(LorenzInvariants {
        word: w.clone(),
        components,
        e,
        n,
        beta: e - n,
        genus: (components == 1).then_some((e - n + 1) / 2),
        trip_number: w.trip_number(),
        positive: t.braid.is_positive(),
        primitive: t.primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::alexander_from_braid;
    use crate::braid::LaurentPolynomial;

    fn word(s: &str) -> SymbolWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_rotation_and_primitivity() {
        assert_eq!(word("RLL").to_string(), "LLR");
        assert_eq!(word("RL"), word("LR"));
        assert!(word("LR").is_primitive());
        assert!(!word("LRLR").is_primitive());
        assert_eq!(word("LRLR").period(), 2);
        assert!(word("L").is_primitive());
        assert!("LXR".parse::<SymbolWord>().is_err());
        assert_eq!(word("RRL").swapped(), word("LLR"));
        assert_eq!(serde_json::to_string(&word("RLL")).unwrap(), "\"LLR\"");
    }

    #[test]
    fn primitive_word_counts() {
        // necklace counts of aperiodic binary words: 2, 1, 2, 3, 6, 9, 18, 30
        let counts: Vec<usize> =
            (1..=8).map(|n| SymbolWord::all_primitive(8).iter().filter(|w| w.len() == n).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn small_template_braids() {
        let lr = template_braid(&word("LR")).unwrap();
        assert_eq!(lr.braid, BraidWord::from_signed(2, &[1]).unwrap());
        assert_eq!(alexander_from_braid(&lr.braid).unwrap(), LaurentPolynomial::one());
        let l = template_braid(&word("L")).unwrap();
        assert_eq!(l.braid, BraidWord::identity(1));
        let llr = template_braid(&word("LLR")).unwrap();
        assert_eq!(llr.braid, BraidWord::from_signed(3, &[2, 1]).unwrap());
        assert!(is_positive_permutation_braid(&llr.braid));
    }

    #[test]
    fn template_braids_are_positive_permutation_knots() {
        for w in SymbolWord::all_primitive(8) {
            let t = template_braid(&w).unwrap();
            assert!(is_positive_permutation_braid(&t.braid), "{w}");
            assert_eq!(t.braid.closure_components(), 1, "{w}");
        }
    }

    #[test]
    fn proper_powers_give_parallel_copies() {
        let t = template_braid(&word("LRLR")).unwrap();
        assert!(!t.primitive);
        assert_eq!(t.braid.closure_components(), 2);
        assert!(is_positive_permutation_braid(&t.braid));
        let t = template_braid(&word("LLRLLRLLR")).unwrap();
        assert_eq!((t.period, t.braid.closure_components()), (3, 3));
    }

    #[test]
    fn invariants_and_mirror_symmetry() {
        let inv = lorenz_invariants(&word("LR")).unwrap();
        assert_eq!((inv.e, inv.n, inv.beta, inv.genus), (1, 2, -1, Some(0)));
        assert!(inv.positive);
        for w in SymbolWord::all_primitive(7) {
            let a = lorenz_invariants(&w).unwrap();
            let b = lorenz_invariants(&w.swapped()).unwrap();
            assert_eq!((a.components, a.e, a.n, a.beta, a.genus), (b.components, b.e, b.n, b.beta, b.genus));
            assert!(a.positive);
        }
        assert_eq!(word("LLRLRR").trip_number(), 2);
        assert_eq!(word("LLLLR").trip_number(), 1);
    }

    #[test]
    fn origin_is_fixed() {
        let t = integrate_lorenz(&LorenzParams::default(), [0.0; 3], 1e-2, 1000).unwrap();
        assert!(t.points.iter().all(|p| *p == [0.0; 3]));
        assert!(lobe_encoding(&t).is_empty());
    }

    #[test]
    fn subcritical_decays_to_origin() {
        let t = integrate_lorenz(&LorenzParams::with_r(0.5), [1.0, 1.0, 1.0], 1e-2, 10_000).unwrap();
        let last = t.points.last().unwrap();
        assert!(last.iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn stable_spiral_near_positive_equilibrium() {
        let params = LorenzParams::with_r(10.0);
        let (cp, _) = params.fixed_points().unwrap();
        let x0 = [cp[0] + 0.5, cp[1] + 0.5, cp[2] + 0.5];
        let t = integrate_lorenz(&params, x0, 1e-3, 20_000).unwrap();
        let s = lobe_encoding(&t);
        assert!(!s.is_empty());
        assert!(s.iter().all(|c| *c == Symbol::R));
    }

    #[test]
    fn mirrored_trajectory_swaps_letters() {
        let params = LorenzParams::default();
        let a = integrate_lorenz(&params, [1.0, 1.0, 1.0], 1e-3, 30_000).unwrap();
        let b = integrate_lorenz(&params, [-1.0, -1.0, 1.0], 1e-3, 30_000).unwrap();
        let sa = lobe_encoding(&a);
        let sb = lobe_encoding(&b);
        assert!(sa.len() > 10);
        assert_eq!(sb, sa.iter().map(|c| c.swap()).collect::<Vec<_>>());
    }

    #[test]
    fn synthetic_periodic_orbit() {
        let dt = 1e-3;
        let pts: Vec<[f64; 3]> = (0..20_000)
            .map(|k| {
                let t = 0.3 + k as f64 * dt;
                [t.cos(), t.sin(), (2.0 * t).cos()]
            })
            .collect();
        let traj = LorenzTrajectory::from_samples(dt, pts);
        let c = close_return_candidates(&traj, 1e-3, 4);
        assert!(!c.is_empty());
        for cand in &c {
            assert!((cand.period - std::f64::consts::TAU).abs() < 1e-6, "{}", cand.period);
            assert_eq!(cand.word, word("LR"));
            assert_eq!(reencode(&traj, cand), cand.word);
        }
    }

    #[test]
    fn short_segment_has_no_returns() {
        let t = integrate_lorenz(&LorenzParams::default(), [1.0, 1.0, 1.0], 1e-3, 2000).unwrap();
        assert!(close_return_candidates(&t, 1e-6, 8).is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(integrate_lorenz(&LorenzParams::default(), [1.0; 3], 0.0, 10).is_err());
        assert!(integrate_lorenz(&LorenzParams::with_r(-1.0), [1.0; 3], 1e-3, 10).is_err());
        assert!(template_braid(&word("")).is_err());
    }
}
