//! Integer Laurent polynomials in one variable `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// `sum_k coeffs[k] * t^(lowest + k)` with integer coefficients.
///
/// Kept trimmed: the first and last coefficients are nonzero, except for the
/// zero polynomial which is stored as `lowest = 0, coeffs = []`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawLaurent", into = "RawLaurent")]
pub struct LaurentPolynomial {
    lowest: i64,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawLaurent {
    lowest: i64,
    coeffs: Vec<i64>,
}

impl From<LaurentPolynomial> for RawLaurent {
    fn from(p: LaurentPolynomial) -> Self {
        RawLaurent { lowest: p.lowest, coeffs: p.coeffs }
    }
}

impl From<RawLaurent> for LaurentPolynomial {
    fn from(raw: RawLaurent) -> Self {
        LaurentPolynomial::new(raw.lowest, raw.coeffs)
    }
}

impl LaurentPolynomial {
    pub fn new(lowest: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPolynomial { lowest, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPolynomial { lowest: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds from ordinary coefficients `c0 + c1 t + c2 t^2 + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(0, coeffs.to_vec())
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            None => {
                self.coeffs.clear();
                self.lowest = 0;
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.lowest += first as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Width of the exponent window (`highest - lowest`); 0 for constants and zero.
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, exponent: i64) -> i64 {
        let k = exponent - self.lowest;
        if k < 0 || k >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn trailing_coeff(&self) -> i64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial { lowest: self.lowest + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c;
        }
        Self::new(self.lowest * k, coeffs)
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.highest(), coeffs)
    }

    pub fn eval_i64(&self, t: i64) -> i64 {
        // Horner over the ordinary part, then account for the offset only at t = ±1.
        assert!(t == 1 || t == -1 || self.lowest >= 0, "negative powers need |t| = 1");
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        if self.lowest >= 0 {
            acc * t.pow(self.lowest as u32)
        } else if t == -1 && self.lowest % 2 != 0 {
            -acc
        } else {
            acc
        }
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c as f64;
        }
        acc * t.powi(self.lowest as i32)
    }

    /// Exact division. Returns `None` when `divisor` is zero or does not
    /// divide `self` over `Z[t, 1/t]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Work with ordinary polynomials: strip the offsets and divide from the top.
        let mut rem: Vec<i64> = self.coeffs.clone();
        let d = &divisor.coeffs;
        let dl = *d.last().unwrap();
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![0i64; qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1];
            if top == 0 {
                continue;
            }
            if top % dl != 0 {
                return None;
            }
            let q = top / dl;
            quot[k] = q;
            for (j, &dc) in d.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(self.lowest - divisor.lowest, quot))
    }

    /// Canonical representative up to units `±t^k`: exponents centred on zero
    /// (lowest = -floor(span/2)) and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        if *coeffs.last().unwrap() < 0 {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        let span = coeffs.len() as i64 - 1;
        Self::new(-(span / 2), coeffs)
    }

    /// Same as [`normalized`](Self::normalized) but with lowest exponent 0,
    /// i.e. an ordinary polynomial `a_0 + ... + a_m t^m` with `a_0 != 0`.
    pub fn normalized_ordinary(&self) -> Self {
        let n = self.normalized();
        n.shift(-n.lowest)
    }

    /// Equality up to multiplication by a unit `±t^k`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// `Δ(t) = Δ(1/t)` up to units.
    pub fn is_symmetric(&self) -> bool {
        self.eq_up_to_units(&self.invert_variable())
    }

    /// Leading and trailing coefficients are both ±1.
    pub fn is_monic_both_ends(&self) -> bool {
        !self.is_zero() && self.leading_coeff().abs() == 1 && self.trailing_coeff().abs() == 1
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for LaurentPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_impl(a: &LaurentPolynomial, b: &LaurentPolynomial, sign: i64) -> LaurentPolynomial {
    if a.is_zero() {
        let mut r = b.clone();
        if sign < 0 {
            r.coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        return r;
    }
    if b.is_zero() {
        return a.clone();
    }
    let lo = a.lowest.min(b.lowest);
    let hi = a.highest().max(b.highest());
    let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
    for (i, &c) in a.coeffs.iter().enumerate() {
        coeffs[(a.lowest - lo) as usize + i] += c;
    }
    for (i, &c) in b.coeffs.iter().enumerate() {
        coeffs[(b.lowest - lo) as usize + i] += sign * c;
    }
    LaurentPolynomial::new(lo, coeffs)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        add_impl(self, rhs, 1)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        add_impl(self, rhs, -1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.lowest + rhs.lowest, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { lowest: self.lowest, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: Self) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lowest, &self.coeffs).cmp(&(other.lowest, &other.coeffs))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.lowest + i as i64;
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// Determinant of a square matrix over `Z[t, 1/t]` by fraction-free
/// (Bareiss) elimination. Every intermediate division is exact.
pub fn determinant(matrix: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let n = matrix.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
    let mut a: Vec<Vec<LaurentPolynomial>> = matrix.to_vec();
    let mut sign = 1i64;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
