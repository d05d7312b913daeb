use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Commutative ring with exact equality and a test for units.
pub trait ExactRing:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
}

impl ExactRing for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn unit_inverse(&self) -> Option<Self> {
        matches!(*self, 1 | -1).then_some(*self)
    }
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl ExactRing for Ratio<i64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

/// `u + vω` with `ω² + ω + 1 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Eisenstein {
    pub u: i64,
    pub v: i64,
}

impl From<[i64; 2]> for Eisenstein {
    fn from([u, v]: [i64; 2]) -> Self {
        Eisenstein { u, v }
    }
}

impl From<Eisenstein> for [i64; 2] {
    fn from(e: Eisenstein) -> Self {
        [e.u, e.v]
    }
}

impl Eisenstein {
    pub const OMEGA: Eisenstein = Eisenstein { u: 0, v: 1 };

    pub const fn new(u: i64, v: i64) -> Self {
        Eisenstein { u, v }
    }

    /// `u² - uv + v²`
    pub fn norm(self) -> i64 {
        self.u * self.u - self.u * self.v + self.v * self.v
    }

    /// Complex conjugate; `ω̄ = ω² = -1 - ω`.
    pub fn conj(self) -> Self {
        Eisenstein { u: self.u - self.v, v: -self.v }
    }

    /// Value in ℂ for `ω = (-1 + i√3)/2`.
    pub fn to_complex(self) -> Complex64 {
        let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        Complex64::new(self.u as f64, 0.0) + w * self.v as f64
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein { u: self.u + o.u, v: self.v + o.v }
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein { u: self.u - o.u, v: self.v - o.v }
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Eisenstein { u: self.u * o.u - self.v * o.v, v: self.u * o.v + self.v * o.u - self.v * o.v }
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein { u: -self.u, v: -self.v }
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (u, 0) => write!(f, "{u}"),
            (0, 1) => write!(f, "w"),
            (0, -1) => write!(f, "-w"),
            (0, v) => write!(f, "{v}w"),
            (u, 1) => write!(f, "{u}+w"),
            (u, -1) => write!(f, "{u}-w"),
            (u, v) if v < 0 => write!(f, "{u}{v}w"),
            (u, v) => write!(f, "{u}+{v}w"),
        }
    }
}

impl ExactRing for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(0, 0)
    }
    fn one() -> Self {
        Eisenstein::new(1, 0)
    }
    fn unit_inverse(&self) -> Option<Self> {
        (self.norm() == 1).then(|| self.conj())
    }
    fn from_i64(n: i64) -> Self {
        Eisenstein::new(n, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_satisfies_its_equation() {
        let w = Eisenstein::OMEGA;
        assert_eq!(w * w + w + Eisenstein::one(), Eisenstein::zero());
        assert_eq!(w * w * w, Eisenstein::one());
        let z = w.to_complex();
        assert!((z * z + z + 1.0).norm() < 1e-15);
        // the value (-1 + 3i)/2 is not a root
        let printed = Complex64::new(-0.5, 1.5);
        assert!((printed * printed + printed + 1.0).norm() > 1.0);
    }

    #[test]
    fn norm_is_multiplicative_and_units() {
        let a = Eisenstein::new(3, -2);
        let b = Eisenstein::new(-1, 4);
        assert_eq!((a * b).norm(), a.norm() * b.norm());
        assert_eq!((a * a.conj()), Eisenstein::from_i64(a.norm()));
        let units: Vec<Eisenstein> =
            [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)].iter().map(|&(u, v)| Eisenstein::new(u, v)).collect();
        for u in units {
            assert_eq!(u * u.unit_inverse().unwrap(), Eisenstein::one());
        }
        assert_eq!(Eisenstein::new(2, 0).unit_inverse(), None);
    }

    #[test]
    fn display_and_wire() {
        assert_eq!(Eisenstein::new(1, -1).to_string(), "1-w");
        assert_eq!(Eisenstein::new(0, 0).to_string(), "0");
        assert_eq!(serde_json::to_string(&Eisenstein::new(2, -3)).unwrap(), "[2,-3]");
    }
}
