//! Transverse-knot invariants of closed braids and a transversality test for
//! sampled closed curves.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::word::BraidWord;
use super::BraidError;

/// Invariants of a braid read as a transverse knot around the braid axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransverseInvariants {
    /// Algebraic length (exponent sum).
    pub e: i64,
    /// Braid index of the given word.
    pub n: i64,
    /// Bennequin (self-linking) number `e - n`.
    pub beta: i64,
    /// Writhe of the closed-braid diagram; each letter is one signed crossing.
    pub w: i64,
    pub components: usize,
}

pub fn transverse_invariants(b: &BraidWord) -> TransverseInvariants {
    let e = b.exponent_sum();
    let n = b.strands() as i64;
    TransverseInvariants { e, n, beta: e - n, w: e, components: b.closure_components() }
}

/// A closed curve sampled at parameter values `taus`. The last sample repeats
/// the first one (for cylindrical coordinates the angle may differ by a
/// multiple of 2π).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "coords", rename_all = "lowercase")]
pub enum SampledCurve {
    /// `(x, y, z)` samples; contact form `dz - y dx`.
    Cartesian { taus: Vec<f64>, points: Vec<[f64; 3]> },
    /// `(r, φ, z)` samples; contact form `r² dφ + dz`.
    Cylindrical { taus: Vec<f64>, points: Vec<[f64; 3]> },
}

const CLOSURE_TOL: f64 = 1e-9;

/// Minimum over the samples of the contact form evaluated on the tangent.
/// A positive value certifies that the sampled curve is positively transverse.
pub fn transversality_margin(curve: &SampledCurve) -> Result<f64, BraidError> {
    let (taus, points, cylindrical) = match curve {
        SampledCurve::Cartesian { taus, points } => (taus, points, false),
        SampledCurve::Cylindrical { taus, points } => (taus, points, true),
    };
    if points.len() < 3 || taus.len() != points.len() {
        return Err(BraidError::Domain("need at least 3 samples with matching parameters".into()));
    }
    let m = points.len() - 1;
    if taus.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(BraidError::Domain("parameter values must be strictly increasing".into()));
    }
    let first = points[0];
    let last = points[m];
    // per-coordinate shift picked up when wrapping around the closed curve
    let mut shift = [0.0; 3];
    for k in 0..3 {
        let d = last[k] - first[k];
        if cylindrical && k == 1 {
            let turns = (d / TAU).round();
            if (d - turns * TAU).abs() > CLOSURE_TOL {
                return Err(BraidError::Domain("curve is not closed in the angle".into()));
            }
            shift[k] = turns * TAU;
        } else if d.abs() > CLOSURE_TOL {
            return Err(BraidError::Domain("curve is not closed (first != last)".into()));
        }
    }
    let period = taus[m] - taus[0];
    let at = |j: i64| -> ([f64; 3], f64) {
        let wraps = j.div_euclid(m as i64);
        let idx = j.rem_euclid(m as i64) as usize;
        let mut p = points[idx];
        for k in 0..3 {
            p[k] += wraps as f64 * shift[k];
        }
        (p, taus[idx] + wraps as f64 * period)
    };
    let mut margin = f64::INFINITY;
    for i in 0..m as i64 {
        let (prev, tp) = at(i - 1);
        let (next, tn) = at(i + 1);
        let (here, _) = at(i);
        let dt = tn - tp;
        let d: Vec<f64> = (0..3).map(|k| (next[k] - prev[k]) / dt).collect();
        let value = if cylindrical {
            here[0] * here[0] * d[1] + d[2]
        } else {
            d[2] - here[1] * d[0]
        };
        margin = margin.min(value);
    }
    Ok(margin)
}
