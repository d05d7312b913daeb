//! Standard contact structure on the unit 3-sphere in ℝ⁴ = ℂ², its Reeb and
//! Liouville fields, and integration of the associated harmonic flows.
//!
//! Coordinates are ordered `(x1, y1, x2, y2)` with `z_k = x_k + i y_k`. The
//! contact form is `α = ½ Σ (x_k dy_k - y_k dx_k)` and `ω = dα = Σ dx_k ∧ dy_k`.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Accepted distance of an input point from the unit sphere.
pub const SPHERE_TOL: f64 = 1e-9;
/// Step used by [`poisson_bracket`].
pub const BRACKET_STEP: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("point is off the unit sphere: |‖p‖ - 1| = {0:e}")]
    OffSphere(f64),
    #[error("invalid flow parameter: {0}")]
    Parameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointR4 {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

impl PointR4 {
    pub const fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        PointR4 { x1, y1, x2, y2 }
    }

    pub fn from_array([x1, y1, x2, y2]: [f64; 4]) -> Self {
        PointR4 { x1, y1, x2, y2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.y1, self.x2, self.y2]
    }

    pub fn norm_sq(self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum()
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::from_array(self.to_array().map(|c| c / n))
    }

    /// `|z1|²`
    pub fn f1(self) -> f64 {
        self.x1 * self.x1 + self.y1 * self.y1
    }

    /// `|z2|²`
    pub fn f2(self) -> f64 {
        self.x2 * self.x2 + self.y2 * self.y2
    }

    /// Energy `½ Σ (x² + y²)` of the uncoupled oscillators.
    pub fn energy(self) -> f64 {
        0.5 * self.norm_sq()
    }

    /// Bott integral `½ (f2 - f1)`.
    pub fn bott(self) -> f64 {
        0.5 * (self.f2() - self.f1())
    }

    pub fn check_on_sphere(self) -> Result<(), FlowError> {
        let off = (self.norm() - 1.0).abs();
        if off < SPHERE_TOL {
            Ok(())
        } else {
            Err(FlowError::OffSphere(off))
        }
    }
}

pub type Vec4 = [f64; 4];

fn dot(a: Vec4, b: Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Uniformly distributed point on the unit sphere.
pub fn random_unit_point<R: Rng + ?Sized>(rng: &mut R) -> PointR4 {
    loop {
        let v: Vec4 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2 = dot(v, v);
        if n2 > 1e-6 && n2 <= 1.0 {
            return PointR4::from_array(v).normalized();
        }
    }
}

/// `X̃ = 2(-y1, x1, -y2, x2)`.
pub fn reeb_at(p: PointR4) -> Vec4 {
    [-2.0 * p.y1, 2.0 * p.x1, -2.0 * p.y2, 2.0 * p.x2]
}

/// `(-y1, x1, -y2, x2)`, the Reeb field of the contact form written without
/// the factor ½.
pub fn reeb_unscaled_at(p: PointR4) -> Vec4 {
    [-p.y1, p.x1, -p.y2, p.x2]
}

/// `X = ½ p`.
pub fn liouville_at(p: PointR4) -> Vec4 {
    p.to_array().map(|c| 0.5 * c)
}

/// `X̆ = (-x2, y2, x1, -y1)`.
pub fn frame_breve_at(p: PointR4) -> Vec4 {
    [-p.x2, p.y2, p.x1, -p.y1]
}

/// `X̌ = (-y2, -x2, y1, x1)`.
pub fn frame_check_at(p: PointR4) -> Vec4 {
    [-p.y2, -p.x2, p.y1, p.x1]
}

/// Lie bracket of two linear vector fields `p ↦ A p`, `p ↦ B p`:
/// `[A, B](p) = (B A - A B) p`.
pub fn linear_bracket(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4], p: PointR4) -> Vec4 {
    let x = p.to_array();
    let apply = |m: &[[f64; 4]; 4], v: Vec4| -> Vec4 { std::array::from_fn(|i| dot(m[i], v)) };
    let ba = apply(b, apply(a, x));
    let ab = apply(a, apply(b, x));
    std::array::from_fn(|i| ba[i] - ab[i])
}

/// Matrices of the linear fields [`frame_breve_at`] and [`frame_check_at`].
pub fn frame_matrices() -> ([[f64; 4]; 4], [[f64; 4]; 4]) {
    let breve = [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ];
    let check = [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ];
    (breve, check)
}

/// `α_p(v)`.
pub fn alpha(p: PointR4, v: Vec4) -> f64 {
    0.5 * (p.x1 * v[1] - p.y1 * v[0] + p.x2 * v[3] - p.y2 * v[2])
}

/// `ε α_p(v)`; `ε` is the conformal factor of a rescaled contact form and is
/// left to the caller.
pub fn alpha_scaled(p: PointR4, v: Vec4, eps: f64) -> f64 {
    eps * alpha(p, v)
}

/// `ω(u, v) = Σ (u_xk v_yk - u_yk v_xk)`.
pub fn omega(u: Vec4, v: Vec4) -> f64 {
    u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]
}

/// Orthonormal basis of the tangent space `p^⊥` of the sphere through `p`.
pub fn tangent_basis(p: PointR4) -> [Vec4; 3] {
    let n = p.normalized().to_array();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| n[a].abs().total_cmp(&n[b].abs()));
    let mut basis: Vec<Vec4> = Vec::with_capacity(3);
    for &k in &order[..3] {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        for u in std::iter::once(&n).chain(basis.iter()) {
            let c = dot(v, *u);
            for i in 0..4 {
                v[i] -= c * u[i];
            }
        }
        let len = dot(v, v).sqrt();
        basis.push(v.map(|c| c / len));
    }
    [basis[0], basis[1], basis[2]]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReebCheck {
    pub alpha_value: f64,
    pub d_alpha_defect: f64,
}

/// Evaluates `α(X̃)` and `max_k |dα(X̃, t_k)|` over an orthonormal tangent
/// basis; both should be `(1, 0)`.
pub fn check_reeb_conditions(p: PointR4) -> Result<ReebCheck, FlowError> {
    p.check_on_sphere()?;
    let r = reeb_at(p);
    let d_alpha_defect = tangent_basis(p).iter().map(|t| omega(r, *t).abs()).fold(0.0, f64::max);
    Ok(ReebCheck { alpha_value: alpha(p, r), d_alpha_defect })
}

/// `i_X̃ i_X ω = ω(X, X̃)` without the sphere check; equals `‖p‖²`.
pub fn omega_pairing_raw(p: PointR4) -> f64 {
    omega(liouville_at(p), reeb_at(p))
}

pub fn omega_pairing(p: PointR4) -> Result<f64, FlowError> {
    p.check_on_sphere()?;
    Ok(omega_pairing_raw(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlowField {
    /// `ẋk = -yk, ẏk = xk`.
    Standard,
    /// Angular speeds `1/r1`, `1/r2` on the two complex coordinates.
    Weighted { r1: f64, r2: f64 },
}

impl FlowField {
    pub fn frequencies(self) -> (f64, f64) {
        match self {
            FlowField::Standard => (1.0, 1.0),
            FlowField::Weighted { r1, r2 } => (1.0 / r1, 1.0 / r2),
        }
    }

    pub fn velocity(self, p: Vec4) -> Vec4 {
        let (w1, w2) = self.frequencies();
        [-w1 * p[1], w1 * p[0], -w2 * p[3], w2 * p[2]]
    }

    fn validate(self) -> Result<(), FlowError> {
        if let FlowField::Weighted { r1, r2 } = self {
            if !(r1 > 0.0 && r2 > 0.0 && r1.is_finite() && r2.is_finite()) {
                return Err(FlowError::Parameter(format!("weights must be positive, got ({r1}, {r2})")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryS3 {
    pub times: Vec<f64>,
    pub points: Vec<PointR4>,
    pub energy: Vec<f64>,
    pub bott: Vec<f64>,
}

impl TrajectoryS3 {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_energy_drift(&self) -> f64 {
        max_drift(&self.energy)
    }

    pub fn max_bott_drift(&self) -> f64 {
        max_drift(&self.bott)
    }

    pub fn max_sphere_defect(&self) -> f64 {
        self.points.iter().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

fn max_drift(xs: &[f64]) -> f64 {
    xs.first().map_or(0.0, |x0| xs.iter().map(|x| (x - x0).abs()).fold(0.0, f64::max))
}

fn rk4_step(field: FlowField, p: Vec4, dt: f64) -> Vec4 {
    let add = |a: Vec4, b: Vec4, s: f64| -> Vec4 { std::array::from_fn(|i| a[i] + s * b[i]) };
    let k1 = field.velocity(p);
    let k2 = field.velocity(add(p, k1, dt / 2.0));
    let k3 = field.velocity(add(p, k2, dt / 2.0));
    let k4 = field.velocity(add(p, k3, dt));
    std::array::from_fn(|i| p[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Fixed-step RK4, projecting back to the unit sphere after every step.
/// Returns `steps + 1` samples including the initial point.
pub fn integrate_flow(x0: PointR4, field: FlowField, dt: f64, steps: usize) -> Result<TrajectoryS3, FlowError> {
    x0.check_on_sphere()?;
    field.validate()?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FlowError::Parameter(format!("dt must be positive, got {dt}")));
    }
    if steps == 0 {
        return Err(FlowError::Parameter("steps must be positive".into()));
    }
    let mut traj = TrajectoryS3 {
        times: Vec::with_capacity(steps + 1),
        points: Vec::with_capacity(steps + 1),
        energy: Vec::with_capacity(steps + 1),
        bott: Vec::with_capacity(steps + 1),
    };
    let mut p = x0;
    for k in 0..=steps {
        traj.times.push(k as f64 * dt);
        traj.points.push(p);
        traj.energy.push(p.energy());
        traj.bott.push(p.bott());
        if k < steps {
            p = PointR4::from_array(rk4_step(field, p.to_array(), dt)).normalized();
        }
    }
    Ok(traj)
}

/// First return of the trajectory to `x(0)`. After the path has left the
/// `eps`-ball around the start, the first local minimum of `|x(t) - x(0)|`
/// lying inside the ball is located as the sign change of its derivative,
/// and the time is refined by linear interpolation between the bracketing
/// samples.
pub fn detect_closed_orbit(traj: &TrajectoryS3, eps: f64) -> Option<f64> {
    let pts: Vec<Vec4> = traj.points.iter().map(|p| p.to_array()).collect();
    let n = pts.len();
    if n < 3 || !(eps > 0.0) {
        return None;
    }
    let x0 = pts[0];
    let diff = |k: usize| -> Vec4 { std::array::from_fn(|i| pts[k][i] - x0[i]) };
    let dist = |k: usize| dot(diff(k), diff(k)).sqrt();
    // ½ d/dt |x - x0|² by central differences
    let g = |k: usize| -> f64 {
        let v: Vec4 = std::array::from_fn(|i| pts[k + 1][i] - pts[k - 1][i]);
        dot(diff(k), v) / (traj.times[k + 1] - traj.times[k - 1])
    };
    let start = (1..n).find(|&k| dist(k) >= eps)?;
    let mut prev: Option<(usize, f64)> = None;
    for k in start.max(1)..n - 1 {
        let gk = g(k);
        if let Some((j, gj)) = prev {
            if gj < 0.0 && gk >= 0.0 && (dist(j) < eps || dist(k) < eps) {
                let s = gj / (gj - gk);
                return Some(traj.times[j] + s * (traj.times[k] - traj.times[j]));
            }
        }
        prev = Some((k, gk));
    }
    None
}

/// Mean angular speeds of `z1` and `z2` over the trajectory, from the
/// unwrapped phase angles.
pub fn winding_frequencies(traj: &TrajectoryS3) -> Option<(f64, f64)> {
    if traj.len() < 2 {
        return None;
    }
    let unwrap = |angle: fn(&PointR4) -> f64| -> f64 {
        let mut total = 0.0;
        let mut last = angle(&traj.points[0]);
        for p in &traj.points[1..] {
            let a = angle(p);
            let mut d = a - last;
            d -= TAU * (d / TAU).round();
            total += d;
            last = a;
        }
        total
    };
    let span = traj.times[traj.len() - 1] - traj.times[0];
    let w1 = unwrap(|p| p.y1.atan2(p.x1));
    let w2 = unwrap(|p| p.y2.atan2(p.x2));
    Some((w1 / span, w2 / span))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKnotType {
    pub p: u64,
    pub q: u64,
    pub orientation: i8,
}

/// Tolerance on `|ω1/ω2 - p/q|` for [`torus_knot_type`].
pub const RATIO_TOL: f64 = 1e-9;

/// Best rational approximation `p/q` of `omega1/omega2` with `q <= max_den`
/// from the convergents of its continued fraction; returns the first
/// convergent (smallest denominator) within [`RATIO_TOL`].
pub fn torus_knot_type(omega1: f64, omega2: f64, max_den: u64) -> Result<Option<TorusKnotType>, FlowError> {
    if !(omega1 > 0.0 && omega2 > 0.0 && omega1.is_finite() && omega2.is_finite()) {
        return Err(FlowError::Parameter(format!("frequencies must be positive, got ({omega1}, {omega2})")));
    }
    if max_den == 0 {
        return Err(FlowError::Parameter("max_den must be at least 1".into()));
    }
    let ratio = omega1 / omega2;
    let (mut h_prev, mut h) = (1u64, ratio.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut rest = ratio - ratio.floor();
    loop {
        if k > max_den {
            return Ok(None);
        }
        if (ratio - h as f64 / k as f64).abs() < RATIO_TOL && h > 0 {
            return Ok(Some(TorusKnotType { p: h, q: k, orientation: 1 }));
        }
        if rest < 1e-15 {
            return Ok(None);
        }
        let x = 1.0 / rest;
        let a = x.floor();
        rest = x - a;
        let a = a as u64;
        let h_next = a.checked_mul(h).and_then(|v| v.checked_add(h_prev));
        let k_next = a.checked_mul(k).and_then(|v| v.checked_add(k_prev));
        match (h_next, k_next) {
            (Some(hn), Some(kn)) => {
                (h_prev, h) = (h, hn);
                (k_prev, k) = (k, kn);
            }
            _ => return Ok(None),
        }
    }
}

/// Canonical Poisson bracket with `(p1, p2) = (x1, x2)`, `(q1, q2) = (y1, y2)`
/// by central differences of step [`BRACKET_STEP`].
pub fn poisson_bracket(f: impl Fn(PointR4) -> f64, g: impl Fn(PointR4) -> f64, p: PointR4) -> f64 {
    let grad = |h: &dyn Fn(PointR4) -> f64| -> Vec4 {
        std::array::from_fn(|i| {
            let mut plus = p.to_array();
            let mut minus = p.to_array();
            plus[i] += BRACKET_STEP;
            minus[i] -= BRACKET_STEP;
            (h(PointR4::from_array(plus)) - h(PointR4::from_array(minus))) / (2.0 * BRACKET_STEP)
        })
    };
    let df = grad(&f);
    let dg = grad(&g);
    df[0] * dg[1] - df[1] * dg[0] + df[2] * dg[3] - df[3] * dg[2]
}
