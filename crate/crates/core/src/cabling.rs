//! Iterated torus knots as braid words via repeated cabling.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CablingError {
    #[error("invalid cable parameter: {0}")]
    Parameter(String),
    #[error("cabling domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One `(p, q)` stage: `p` strands around the companion, `q` twists relative
/// to the Seifert framing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableStage {
    pub p: i64,
    pub q: i64,
}

/// Wire format: `{"stages": [[p, q], ...], "orientation": ±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableDescriptor {
    #[serde(with = "stage_pairs")]
    pub stages: Vec<CableStage>,
    #[serde(default = "default_orientation")]
    pub orientation: i8,
}

fn default_orientation() -> i8 {
    1
}

mod stage_pairs {
    use super::CableStage;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(stages: &[CableStage], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = stages.iter().map(|st| [st.p, st.q]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<CableStage>, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[p, q]| CableStage { p, q }).collect())
    }
}

impl CableDescriptor {
    pub fn new(stages: &[(i64, i64)]) -> Self {
        CableDescriptor {
            stages: stages.iter().map(|&(p, q)| CableStage { p, q }).collect(),
            orientation: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotCoprime { stage: usize, p: i64, q: i64, gcd: i64 },
    FirstStageOrder { p: i64, q: i64 },
    TooFewStrands { stage: usize, p: i64 },
    BadOrientation { orientation: i8 },
}

/// Lists every constraint the descriptor breaks. Only the first stage is
/// restricted in magnitude (`p1 < q1`).
pub fn validate_descriptor(d: &CableDescriptor) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.orientation != 1 && d.orientation != -1 {
        out.push(Violation::BadOrientation { orientation: d.orientation });
    }
    for (i, st) in d.stages.iter().enumerate() {
        if st.p < 2 {
            out.push(Violation::TooFewStrands { stage: i, p: st.p });
        }
        let g = gcd(st.p, st.q);
        if g != 1 {
            out.push(Violation::NotCoprime { stage: i, p: st.p, q: st.q, gcd: g });
        }
        if i == 0 && st.p >= st.q {
            out.push(Violation::FirstStageOrder { p: st.p, q: st.q });
        }
    }
    out
}

/// Letters moving bundle `i` (strands `(i-1)p+1 ..= ip`) across bundle
/// `i+1`; rightmost strand of the left bundle first, `p²` letters.
fn bundle_crossing(i: u32, p: u32, sign: i8) -> impl Iterator<Item = Letter> {
    let offset = (i - 1) * p;
    (1..=p).rev().flat_map(move |r| (r..r + p).map(move |k| Letter::new(offset + k, sign)))
}

/// `(p, q)`-cable of the closure of `base` (a knot), framed relative to the
/// Seifert framing: the `p`-parallel of `base` followed by
/// `(σ_1 ··· σ_{p-1})^{q - p·w}` on the first bundle, `w` the exponent sum.
pub fn cable_braid(base: &BraidWord, p: i64, q: i64) -> Result<BraidWord, CablingError> {
    if p < 2 {
        return Err(CablingError::Parameter(format!("cable needs p >= 2, got {p}")));
    }
    if gcd(p, q) != 1 {
        return Err(CablingError::Parameter(format!("({p}, {q}) is not coprime")));
    }
    if !base.is_knot() {
        return Err(CablingError::Domain(format!(
            "companion closes to {} components",
            base.closure_components()
        )));
    }
    let pu = p as u32;
    let strands = base.strands() * pu;
    let mut letters: Vec<Letter> = Vec::with_capacity(base.len() * (pu * pu) as usize);
    for l in base.letters() {
        letters.extend(bundle_crossing(l.index, pu, l.sign));
    }
    let twist = q - p * base.exponent_sum();
    let sign = if twist < 0 { -1 } else { 1 };
    for _ in 0..twist.unsigned_abs() {
        if sign > 0 {
            letters.extend((1..pu).map(Letter::pos));
        } else {
            letters.extend((1..pu).rev().map(Letter::neg));
        }
    }
    Ok(BraidWord::new(strands, letters)?)
}

/// Left fold of [`cable_braid`] from the unknot on one strand. Orientation
/// `-1` returns the mirror image.
pub fn iterated_cable(d: &CableDescriptor) -> Result<BraidWord, CablingError> {
    let violations = validate_descriptor(d);
    if !violations.is_empty() {
        return Err(CablingError::Parameter(format!("invalid descriptor: {violations:?}")));
    }
    let mut word = BraidWord::identity(1);
    for st in &d.stages {
        word = cable_braid(&word, st.p, st.q)?;
    }
    Ok(if d.orientation < 0 { word.mirror() } else { word })
}

/// Curve class `ν·meridian + µ·longitude` on a boundary torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusCurveClass {
    pub nu: i64,
    pub mu: i64,
}

/// Reduces `ν` modulo `µ` (for `µ > 0`) and divides out the common factor.
pub fn normalize_curve_class(c: TorusCurveClass) -> TorusCurveClass {
    if c.nu == 0 && c.mu == 0 {
        return c;
    }
    let (mut nu, mut mu) = (c.nu, c.mu);
    let g = gcd(nu, mu);
    nu /= g;
    mu /= g;
    if mu > 0 {
        nu = nu.rem_euclid(mu);
    }
    TorusCurveClass { nu, mu }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32, s: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, s).unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(validate_descriptor(&CableDescriptor::new(&[(2, 3)])).is_empty());
        assert!(matches!(
            validate_descriptor(&CableDescriptor::new(&[(2, 4)]))[..],
            [Violation::NotCoprime { gcd: 2, .. }]
        ));
        assert_eq!(
            validate_descriptor(&CableDescriptor::new(&[(3, 2)])),
            vec![Violation::FirstStageOrder { p: 3, q: 2 }]
        );
        // later stages carry no magnitude constraint
        assert!(validate_descriptor(&CableDescriptor::new(&[(2, 3), (5, 2)])).is_empty());
    }

    #[test]
    fn cable_of_unknot_is_torus_braid() {
        assert_eq!(cable_braid(&BraidWord::identity(1), 2, 3).unwrap(), w(2, &[1, 1, 1]));
        let b = cable_braid(&BraidWord::identity(1), 3, 4).unwrap();
        assert_eq!(b, w(3, &[1, 2, 1, 2, 1, 2, 1, 2]));
        assert_eq!(b.exponent_sum(), 8);
    }

    #[test]
    fn cable_of_trefoil_crossing_count() {
        let b = cable_braid(&w(2, &[1, 1, 1]), 2, 13).unwrap();
        assert_eq!(b.strands(), 4);
        assert_eq!(b.exponent_sum(), 19);
        assert_eq!(b.closure_components(), 1);
        assert!(b.is_positive());
        assert_eq!(&b.to_signed()[..4], &[2, 3, 1, 2]);
    }

    #[test]
    fn negative_twist_correction() {
        let b = cable_braid(&w(2, &[1, 1, 1]), 2, 1).unwrap();
        assert_eq!(b.exponent_sum(), 12 - 5);
        assert_eq!(b.closure_components(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(cable_braid(&BraidWord::identity(1), 2, 4), Err(CablingError::Parameter(_))));
        assert!(matches!(cable_braid(&w(2, &[1, 1]), 2, 3), Err(CablingError::Domain(_))));
        assert!(cable_braid(&BraidWord::identity(1), 1, 3).is_err());
    }

    #[test]
    fn iterated_fold() {
        assert_eq!(iterated_cable(&CableDescriptor::new(&[])).unwrap(), BraidWord::identity(1));
        assert_eq!(iterated_cable(&CableDescriptor::new(&[(2, 3)])).unwrap(), w(2, &[1, 1, 1]));
        let two = iterated_cable(&CableDescriptor::new(&[(2, 3), (2, 13)])).unwrap();
        assert_eq!(two, cable_braid(&w(2, &[1, 1, 1]), 2, 13).unwrap());
        let mut d = CableDescriptor::new(&[(2, 3)]);
        d.orientation = -1;
        assert_eq!(iterated_cable(&d).unwrap(), w(2, &[-1, -1, -1]));
    }

    #[test]
    fn curve_class_normalization() {
        let n = |nu, mu| normalize_curve_class(TorusCurveClass { nu, mu });
        assert_eq!(n(3, 2), TorusCurveClass { nu: 1, mu: 2 });
        assert_eq!(n(0, 0), TorusCurveClass { nu: 0, mu: 0 });
        assert_eq!(n(7, 3), TorusCurveClass { nu: 1, mu: 3 });
        assert_eq!(n(4, 6), TorusCurveClass { nu: 2, mu: 3 });
    }

    #[test]
    fn descriptor_wire_format() {
        let d: CableDescriptor = serde_json::from_str(r#"{"stages":[[2,3],[2,13]],"orientation":1}"#).unwrap();
        assert_eq!(d, CableDescriptor::new(&[(2, 3), (2, 13)]));
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"stages":[[2,3],[2,13]],"orientation":1}"#);
    }
}
