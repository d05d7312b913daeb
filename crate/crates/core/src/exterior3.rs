//! Pointwise exterior calculus on Euclidean 3-space with the flat metric:
//! musical isomorphisms, Hodge star, finite-difference `d` and curl, and
//! Beltrami/Helmholtz residuals.

use thiserror::Error;

pub type Point3 = [f64; 3];
pub type Vec3 = [f64; 3];

/// Default central-difference step for first derivatives.
pub const DEFAULT_STEP: f64 = 1e-5;
/// Default step for second differences.
pub const DEFAULT_SECOND_STEP: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("non-finite field value {value:?} at {at:?}")]
    NonFinite { at: Point3, value: Vec3 },
    #[error("non-finite point {0:?}")]
    NonFinitePoint(Point3),
    #[error("finite-difference step must be positive, got {0}")]
    Step(f64),
}

/// A vector field on ℝ³.
pub trait Field3 {
    fn at(&self, p: Point3) -> Vec3;
}

impl<F: Fn(Point3) -> Vec3> Field3 for F {
    fn at(&self, p: Point3) -> Vec3 {
        self(p)
    }
}

/// Arnold–Beltrami–Childress flow
/// `(A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)`; `curl v = v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcFlow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl AbcFlow {
    pub const UNIT: AbcFlow = AbcFlow { a: 1.0, b: 1.0, c: 1.0 };
}

impl Field3 for AbcFlow {
    fn at(&self, [x, y, z]: Point3) -> Vec3 {
        [
            self.a * z.sin() + self.c * y.cos(),
            self.b * x.sin() + self.a * z.cos(),
            self.c * y.sin() + self.b * x.cos(),
        ]
    }
}

/// `a1 dx1 + a2 dx2 + a3 dx3`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneForm3 {
    pub a: [f64; 3],
}

/// `b12 dx1∧dx2 + b31 dx3∧dx1 + b23 dx2∧dx3`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoForm3 {
    pub b12: f64,
    pub b31: f64,
    pub b23: f64,
}

impl OneForm3 {
    pub fn hodge(self) -> TwoForm3 {
        TwoForm3 { b23: self.a[0], b31: self.a[1], b12: self.a[2] }
    }

    /// Raises the index (identity metric).
    pub fn sharp(self) -> Vec3 {
        self.a
    }
}

impl TwoForm3 {
    pub fn hodge(self) -> OneForm3 {
        OneForm3 { a: [self.b23, self.b31, self.b12] }
    }
}

fn check_point(p: Point3) -> Result<(), ExteriorError> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(ExteriorError::NonFinitePoint(p))
    }
}

fn eval(v: &impl Field3, p: Point3) -> Result<Vec3, ExteriorError> {
    let value = v.at(p);
    if value.iter().all(|c| c.is_finite()) {
        Ok(value)
    } else {
        Err(ExteriorError::NonFinite { at: p, value })
    }
}

fn check_step(h: f64) -> Result<(), ExteriorError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(ExteriorError::Step(h))
    }
}

/// Lowers the index of `v` at `p`.
pub fn flat(v: &impl Field3, p: Point3) -> Result<OneForm3, ExteriorError> {
    check_point(p)?;
    Ok(OneForm3 { a: eval(v, p)? })
}

/// Central-difference Jacobian, `jac[i][j] = ∂v_i/∂x_j`.
pub fn jacobian(v: &impl Field3, p: Point3, h: f64) -> Result<[[f64; 3]; 3], ExteriorError> {
    check_point(p)?;
    check_step(h)?;
    let mut jac = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut plus = p;
        let mut minus = p;
        plus[j] += h;
        minus[j] -= h;
        let (vp, vm) = (eval(v, plus)?, eval(v, minus)?);
        for i in 0..3 {
            jac[i][j] = (vp[i] - vm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Exterior derivative of `♭v` at `p`.
pub fn d_flat(v: &impl Field3, p: Point3, h: f64) -> Result<TwoForm3, ExteriorError> {
    let j = jacobian(v, p, h)?;
    Ok(TwoForm3 {
        b12: j[1][0] - j[0][1],
        b31: j[0][2] - j[2][0],
        b23: j[2][1] - j[1][2],
    })
}

/// `♯ ∗ d ♭ v` at `p` with central differences of step `h`.
pub fn curl(v: &impl Field3, p: Point3, h: f64) -> Result<Vec3, ExteriorError> {
    Ok(d_flat(v, p, h)?.hodge().sharp())
}

pub fn divergence(v: &impl Field3, p: Point3, h: f64) -> Result<f64, ExteriorError> {
    let j = jacobian(v, p, h)?;
    Ok(j[0][0] + j[1][1] + j[2][2])
}

/// `curl v - κ v` at `p`.
pub fn beltrami_residual(v: &impl Field3, kappa: f64, p: Point3, h: f64) -> Result<Vec3, ExteriorError> {
    let c = curl(v, p, h)?;
    let value = eval(v, p)?;
    Ok([c[0] - kappa * value[0], c[1] - kappa * value[1], c[2] - kappa * value[2]])
}

/// `∇²v + κ² v` at `p`, componentwise second central differences of step `h`.
pub fn helmholtz_residual(v: &impl Field3, kappa: f64, p: Point3, h: f64) -> Result<Vec3, ExteriorError> {
    check_point(p)?;
    check_step(h)?;
    let centre = eval(v, p)?;
    let mut lap = [0.0; 3];
    for j in 0..3 {
        let mut plus = p;
        let mut minus = p;
        plus[j] += h;
        minus[j] -= h;
        let (vp, vm) = (eval(v, plus)?, eval(v, minus)?);
        for i in 0..3 {
            lap[i] += (vp[i] - 2.0 * centre[i] + vm[i]) / (h * h);
        }
    }
    Ok([
        lap[0] + kappa * kappa * centre[0],
        lap[1] + kappa * kappa * centre[1],
        lap[2] + kappa * kappa * centre[2],
    ])
}

/// Electric/magnetic split `E = v cos f`, `B = v sin f` of a force-free field
/// together with the constraint residuals `div v` and `v · ∇f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellSplit {
    pub e: Vec3,
    pub b: Vec3,
    pub divergence: f64,
    pub phase_transport: f64,
}

pub fn maxwell_decomposition(
    v: &impl Field3,
    f: impl Fn(Point3) -> f64,
    p: Point3,
    h: f64,
) -> Result<MaxwellSplit, ExteriorError> {
    check_point(p)?;
    check_step(h)?;
    let value = eval(v, p)?;
    let phase = f(p);
    let mut grad = [0.0; 3];
    for j in 0..3 {
        let mut plus = p;
        let mut minus = p;
        plus[j] += h;
        minus[j] -= h;
        grad[j] = (f(plus) - f(minus)) / (2.0 * h);
    }
    if !phase.is_finite() || grad.iter().any(|g| !g.is_finite()) {
        return Err(ExteriorError::NonFinite { at: p, value: grad });
    }
    let (s, c) = phase.sin_cos();
    Ok(MaxwellSplit {
        e: value.map(|x| x * c),
        b: value.map(|x| x * s),
        divergence: divergence(v, p, h)?,
        phase_transport: value[0] * grad[0] + value[1] * grad[1] + value[2] * grad[2],
    })
}

pub fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(p: Point3) -> Vec3 {
        [-p[1], p[0], 0.0]
    }

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (0..3).all(|i| (a[i] - b[i]).abs() < tol)
    }

    #[test]
    fn flat_examples() {
        assert_eq!(flat(&|_p: Point3| [1.0, 0.0, 0.0], [3.0, -1.0, 2.0]).unwrap().a, [1.0, 0.0, 0.0]);
        assert_eq!(flat(&rotation, [1.0, 2.0, 0.0]).unwrap().a, [-2.0, 1.0, 0.0]);
        assert_eq!(flat(&AbcFlow::UNIT, [0.0; 3]).unwrap().a, [1.0, 1.0, 1.0]);
        let bad = |_p: Point3| [f64::NAN, 0.0, 0.0];
        assert!(matches!(flat(&bad, [0.0; 3]), Err(ExteriorError::NonFinite { .. })));
    }

    #[test]
    fn musical_and_hodge_are_involutive() {
        let a = OneForm3 { a: [0.3, -1.5, 2.25] };
        assert_eq!(a.hodge().hodge(), a);
        let b = TwoForm3 { b12: 1.0, b31: -2.0, b23: 0.5 };
        assert_eq!(b.hodge().hodge(), b);
        assert_eq!(flat(&AbcFlow::UNIT, [0.2, 0.4, 0.6]).unwrap().sharp(), AbcFlow::UNIT.at([0.2, 0.4, 0.6]));
    }

    #[test]
    fn curl_of_rotation_and_constants() {
        let c = curl(&rotation, [0.7, -0.2, 1.1], 1e-5).unwrap();
        assert!(close(c, [0.0, 0.0, 2.0], 1e-8));
        let k = curl(&|_p: Point3| [1.0, 2.0, 3.0], [0.1, 0.2, 0.3], 1e-5).unwrap();
        assert_eq!(k, [0.0, 0.0, 0.0]);
        assert!(matches!(curl(&rotation, [0.0; 3], 0.0), Err(ExteriorError::Step(_))));
        assert!(curl(&rotation, [0.0; 3], -1.0).is_err());
    }

    #[test]
    fn abc_flow_is_beltrami() {
        let p = [0.4, 1.3, -2.2];
        let c = curl(&AbcFlow::UNIT, p, DEFAULT_STEP).unwrap();
        assert!(close(c, AbcFlow::UNIT.at(p), 1e-6));
        let r = beltrami_residual(&AbcFlow::UNIT, 1.0, p, DEFAULT_STEP).unwrap();
        assert!(norm(r) < 1e-6);
    }

    #[test]
    fn beltrami_residual_trivial_cases() {
        let r = beltrami_residual(&rotation, 0.0, [0.3, 0.1, 0.0], DEFAULT_STEP).unwrap();
        assert!(close(r, [0.0, 0.0, 2.0], 1e-8));
        let zero = |_p: Point3| [0.0; 3];
        assert_eq!(beltrami_residual(&zero, 5.0, [1.0, 2.0, 3.0], DEFAULT_STEP).unwrap(), [0.0; 3]);
    }

    #[test]
    fn helmholtz_examples() {
        let p = [0.9, -0.4, 0.25];
        let r = helmholtz_residual(&AbcFlow::UNIT, 1.0, p, DEFAULT_SECOND_STEP).unwrap();
        assert!(norm(r) < 1e-4);
        let s = helmholtz_residual(&|q: Point3| [q[0].sin(), 0.0, 0.0], 1.0, p, DEFAULT_SECOND_STEP).unwrap();
        assert!(norm(s) < 1e-5);
        let zero = |_p: Point3| [0.0; 3];
        assert_eq!(helmholtz_residual(&zero, 1.0, p, DEFAULT_SECOND_STEP).unwrap(), [0.0; 3]);
    }

    #[test]
    fn maxwell_split() {
        let p = [0.3, 0.6, 0.9];
        let m = maxwell_decomposition(&AbcFlow::UNIT, |_q| 0.0, p, DEFAULT_STEP).unwrap();
        assert_eq!(m.e, AbcFlow::UNIT.at(p));
        assert_eq!(m.b, [0.0; 3]);
        // f = -t at fixed t is constant in space
        let t = 0.37;
        let m = maxwell_decomposition(&AbcFlow::UNIT, move |_q| -t, p, DEFAULT_STEP).unwrap();
        assert!(m.divergence.abs() < 1e-6);
        assert_eq!(m.phase_transport, 0.0);
        let m = maxwell_decomposition(&|_q: Point3| [1.0, 0.0, 0.0], |q| q[1], p, DEFAULT_STEP).unwrap();
        assert!(m.phase_transport.abs() < 1e-12);
    }
}
