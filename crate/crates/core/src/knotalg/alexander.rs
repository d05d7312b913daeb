use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::KnotAlgError;
use crate::braid::{determinant, LaurentPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub polynomial: LaurentPolynomial,
    /// Leading and trailing coefficients are ±1.
    pub fibered_consistent: bool,
    /// `|Δ(1)| = 1`, as required of a knot.
    pub knot_like: bool,
}

impl AlexanderReport {
    fn new(polynomial: LaurentPolynomial) -> Self {
        let knot_like = !polynomial.is_zero() && polynomial.eval_i64(1).abs() == 1;
        AlexanderReport { fibered_consistent: polynomial.is_monic_both_ends(), knot_like, polynomial }
    }
}

/// Characteristic polynomial `t² - tr(M) t + det(M)` of a fiber monodromy.
pub fn monodromy_alexander(m: &IntMatrix) -> Result<AlexanderReport, KnotAlgError> {
    let det = m.det();
    if det.abs() != 1 {
        return Err(KnotAlgError::Domain(format!("monodromy must have det ±1, got {det}")));
    }
    Ok(AlexanderReport::new(LaurentPolynomial::from_coeffs(&[det, -m.trace(), 1])))
}

/// `det(Vᵀ - tV)` for a square Seifert matrix `V`, shifted to start at `t⁰`
/// with positive leading coefficient. A `0×0` matrix gives `1`.
pub fn alexander_from_seifert(v: &[Vec<i64>]) -> Result<AlexanderReport, KnotAlgError> {
    let n = v.len();
    if v.iter().any(|row| row.len() != n) {
        return Err(KnotAlgError::Parameter("Seifert matrix must be square".into()));
    }
    let m: Vec<Vec<LaurentPolynomial>> = (0..n)
        .map(|i| (0..n).map(|j| LaurentPolynomial::from_coeffs(&[v[j][i], -v[i][j]])).collect())
        .collect();
    let det = determinant(&m);
    let poly = if det.is_zero() { det } else { det.normalized_ordinary() };
    Ok(AlexanderReport::new(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotalg::matrix::int_matrix;

    fn poly(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(c)
    }

    #[test]
    fn monodromy_examples() {
        let r = monodromy_alexander(&int_matrix([[2, 1], [1, 1]])).unwrap();
        assert_eq!(r.polynomial, poly(&[1, -3, 1]));
        assert!(r.fibered_consistent && r.knot_like);
        let r = monodromy_alexander(&int_matrix([[1, 1], [-1, 0]])).unwrap();
        assert_eq!(r.polynomial, poly(&[1, -1, 1]));
        let r = monodromy_alexander(&int_matrix([[1, 0], [0, 1]])).unwrap();
        assert_eq!(r.polynomial, poly(&[1, -2, 1]));
        assert!(!r.knot_like);
        assert!(monodromy_alexander(&int_matrix([[2, 0], [0, 1]])).is_err());
    }

    #[test]
    fn seifert_examples() {
        let r = alexander_from_seifert(&[vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(r.polynomial, poly(&[1, -1, 1]));
        assert!(r.fibered_consistent);
        let r = alexander_from_seifert(&[vec![1, 1], vec![0, -1]]).unwrap();
        assert!(r.polynomial.eq_up_to_units(&poly(&[1, -3, 1])));
        let r = alexander_from_seifert(&[vec![0]]).unwrap();
        assert!(r.polynomial.is_zero());
        assert!(!r.knot_like);
        assert_eq!(alexander_from_seifert(&[]).unwrap().polynomial, LaurentPolynomial::one());
        assert!(alexander_from_seifert(&[vec![1, 2]]).is_err());
    }
}
