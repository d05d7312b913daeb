use std::collections::BTreeSet;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::matrix::{Matrix2, RationalMatrix};
use super::KnotAlgError;

/// Solution of `m1² + m2² + m3² = 3 m1 m2 m3`, kept sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MarkovTriple(pub u64, pub u64, pub u64);

impl MarkovTriple {
    pub fn new(m1: u64, m2: u64, m3: u64) -> Result<Self, KnotAlgError> {
        let mut v = [m1, m2, m3];
        v.sort_unstable();
        let t = MarkovTriple(v[0], v[1], v[2]);
        if t.is_valid() {
            Ok(t)
        } else {
            Err(KnotAlgError::Domain(format!("({m1}, {m2}, {m3}) is not a Markov triple")))
        }
    }

    pub fn is_valid(&self) -> bool {
        let [a, b, c] = [self.0, self.1, self.2].map(u128::from);
        a > 0 && a * a + b * b + c * c == 3 * a * b * c
    }

    pub fn to_array(self) -> [u64; 3] {
        [self.0, self.1, self.2]
    }

    /// Traces `(3m1, 3m2, 3m3)` of the corresponding matrix triple.
    pub fn traces(self) -> [u64; 3] {
        self.to_array().map(|m| 3 * m)
    }
}

fn flip(m: [u64; 3], i: usize) -> Result<MarkovTriple, KnotAlgError> {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let prod = 3u64
        .checked_mul(m[j])
        .and_then(|x| x.checked_mul(m[k]))
        .ok_or_else(|| KnotAlgError::Overflow(format!("Vieta flip of {m:?}")))?;
    let mut next = m;
    next[i] = prod - m[i];
    MarkovTriple::new(next[0], next[1], next[2])
}

/// The three Vieta involutions `m_i -> 3 m_j m_k - m_i`, each sorted.
pub fn markov_neighbors(m: MarkovTriple) -> Result<[MarkovTriple; 3], KnotAlgError> {
    if !m.is_valid() {
        return Err(KnotAlgError::Domain(format!("{m:?} is not a Markov triple")));
    }
    let a = m.to_array();
    let mut out = [flip(a, 0)?, flip(a, 1)?, flip(a, 2)?];
    out.sort();
    Ok(out)
}

/// Breadth-first closure of `(1, 1, 1)` under the Vieta involutions.
pub fn markov_tree(depth: usize) -> Result<BTreeSet<MarkovTriple>, KnotAlgError> {
    let mut seen = BTreeSet::from([MarkovTriple(1, 1, 1)]);
    let mut frontier = vec![MarkovTriple(1, 1, 1)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in frontier {
            for n in markov_neighbors(t)? {
                if seen.insert(n) {
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

pub fn markov_numbers(triples: &BTreeSet<MarkovTriple>) -> BTreeSet<u64> {
    triples.iter().flat_map(|t| t.to_array()).collect()
}

/// `(x, y, z) -> (3yz - x, y, z)`.
pub fn trace_map(p: [i128; 3]) -> [i128; 3] {
    [3 * p[1] * p[2] - p[0], p[1], p[2]]
}

/// `x² + y² + z² - 3xyz`, invariant under [`trace_map`].
pub fn trace_map_integral(p: [i128; 3]) -> i128 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 3 * p[0] * p[1] * p[2]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceChecks {
    pub trace_a: String,
    pub trace_b: String,
    pub trace_ab: String,
    pub trace_commutator: String,
    /// `2 + tr[a,b] = x² + y² + z² - xyz`
    pub fricke_commutator: bool,
    /// `xy = tr(ab) + tr(ab⁻¹)`
    pub fricke_product: bool,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracePair {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
    pub checks: TraceChecks,
}

/// `a = (1/z)[[xz - y, x], [x, y]]`, `b = (1/z)[[yz - x, -y], [-y, x]]` for a
/// solution of `x² + y² + z² = xyz`.
pub fn traces_to_matrices(x: i64, y: i64, z: i64) -> Result<TracePair, KnotAlgError> {
    if z == 0 {
        return Err(KnotAlgError::Domain("z must be nonzero".into()));
    }
    let (xw, yw, zw) = (x as i128, y as i128, z as i128);
    if xw * xw + yw * yw + zw * zw != xw * yw * zw {
        return Err(KnotAlgError::Domain(format!("x² + y² + z² != xyz for ({x}, {y}, {z})")));
    }
    let q = |n: i64| Ratio::new(n, z);
    let a = Matrix2::new(q(x * z - y), q(x), q(x), q(y));
    let b = Matrix2::new(q(y * z - x), q(-y), q(-y), q(x));
    let r = |n: i64| Ratio::from_integer(n);
    let ab = a.mul(&b);
    let comm = a.commutator(&b)?;
    let b_inv = b.inverse().ok_or_else(|| KnotAlgError::Domain("b is singular".into()))?;
    let fricke_commutator = r(2) + comm.trace() == r(x * x + y * y + z * z - x * y * z);
    let fricke_product = r(x * y) == ab.trace() + a.mul(&b_inv).trace();
    let all_pass = a.trace() == r(x)
        && b.trace() == r(y)
        && ab.trace() == r(z)
        && comm.trace() == r(-2)
        && fricke_commutator
        && fricke_product
        && a.is_special()
        && b.is_special();
    let checks = TraceChecks {
        trace_a: a.trace().to_string(),
        trace_b: b.trace().to_string(),
        trace_ab: ab.trace().to_string(),
        trace_commutator: comm.trace().to_string(),
        fricke_commutator,
        fricke_product,
        all_pass,
    };
    Ok(TracePair { a, b, checks })
}

/// Length of the closed geodesic with real trace `x`: `2 arccosh(|x|/2)`.
pub fn geodesic_length(x: f64) -> Result<f64, KnotAlgError> {
    if !(x.abs() > 2.0) || !x.is_finite() {
        return Err(KnotAlgError::Domain(format!("|trace| must exceed 2, got {x}")));
    }
    Ok(2.0 * (x.abs() / 2.0).acosh())
}

/// Complex length `l` with `tr = ±2 cosh(l/2)` and `Re l > 0`.
pub fn complex_geodesic_length(x: Complex64) -> Result<Complex64, KnotAlgError> {
    let l = 2.0 * (x / 2.0).acosh();
    if !(l.re.abs() > 1e-12) || !l.is_finite() {
        return Err(KnotAlgError::Domain(format!("trace {x} is elliptic or parabolic")));
    }
    Ok(if l.re < 0.0 { -l } else { l })
}
