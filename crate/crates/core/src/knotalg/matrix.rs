use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::ring::{Eisenstein, ExactRing};
use super::KnotAlgError;

/// `[[a, b], [c, d]]`
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: ExactRing> Matrix2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Matrix2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn scalar(s: T) -> Self {
        Matrix2::new(s.clone(), T::zero(), T::zero(), s)
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn is_special(&self) -> bool {
        self.det() == T::one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |x: &T, y: &T, z: &T, w: &T| x.clone() * y.clone() + z.clone() * w.clone();
        Matrix2::new(
            m(&self.a, &o.a, &self.b, &o.c),
            m(&self.a, &o.b, &self.b, &o.d),
            m(&self.c, &o.a, &self.d, &o.c),
            m(&self.c, &o.b, &self.d, &o.d),
        )
    }

    pub fn neg(&self) -> Self {
        Matrix2::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix2::new(
            s.clone() * self.a.clone(),
            s.clone() * self.b.clone(),
            s.clone() * self.c.clone(),
            s.clone() * self.d.clone(),
        )
    }

    /// Inverse when the determinant is a unit of the ring.
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().unit_inverse()?;
        Some(Matrix2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone()).scale(&inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self, KnotAlgError> {
        let base = if e < 0 {
            self.inverse().ok_or_else(|| KnotAlgError::Domain(format!("{self} is not invertible")))?
        } else {
            self.clone()
        };
        let mut acc = Self::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn commutator(&self, o: &Self) -> Result<Self, KnotAlgError> {
        let ai = self.inverse().ok_or_else(|| KnotAlgError::Domain("singular matrix".into()))?;
        let bi = o.inverse().ok_or_else(|| KnotAlgError::Domain("singular matrix".into()))?;
        Ok(self.mul(o).mul(&ai).mul(&bi))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `±I`
    pub fn is_projective_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    /// Equality up to an overall sign.
    pub fn projectively_eq(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub type IntMatrix = Matrix2<i64>;
pub type EisensteinMatrix = Matrix2<Eisenstein>;
pub type RationalMatrix = Matrix2<Ratio<i64>>;

pub fn int_matrix(rows: [[i64; 2]; 2]) -> IntMatrix {
    Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
}

impl IntMatrix {
    pub fn to_eisenstein(&self) -> EisensteinMatrix {
        let e = |x: i64| Eisenstein::from_i64(x);
        Matrix2::new(e(self.a), e(self.b), e(self.c), e(self.d))
    }
}

impl RationalMatrix {
    /// Integer matrix when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let i = |r: &Ratio<i64>| r.is_integer().then(|| r.to_integer());
        Some(Matrix2::new(i(&self.a)?, i(&self.b)?, i(&self.c)?, i(&self.d)?))
    }
}

/// Wire format: a ring tag and the four entries in row order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "ring", content = "entries")]
pub enum MatrixWire {
    #[serde(rename = "Z")]
    Integer([i64; 4]),
    #[serde(rename = "Z[w]")]
    Eisenstein([[i64; 2]; 4]),
    /// Entries as `"p/q"` or `"p"`.
    #[serde(rename = "Q")]
    Rational([String; 4]),
}

impl From<&IntMatrix> for MatrixWire {
    fn from(m: &IntMatrix) -> Self {
        MatrixWire::Integer([m.a, m.b, m.c, m.d])
    }
}

impl From<&EisensteinMatrix> for MatrixWire {
    fn from(m: &EisensteinMatrix) -> Self {
        MatrixWire::Eisenstein([m.a.into(), m.b.into(), m.c.into(), m.d.into()])
    }
}

impl From<&RationalMatrix> for MatrixWire {
    fn from(m: &RationalMatrix) -> Self {
        MatrixWire::Rational([m.a.to_string(), m.b.to_string(), m.c.to_string(), m.d.to_string()])
    }
}

impl MatrixWire {
    /// Every wire matrix embedded over ℤ[ω]; rational entries must be integral.
    pub fn to_eisenstein(&self) -> Result<EisensteinMatrix, KnotAlgError> {
        match self {
            MatrixWire::Integer([a, b, c, d]) => Ok(int_matrix([[*a, *b], [*c, *d]]).to_eisenstein()),
            MatrixWire::Eisenstein([a, b, c, d]) => {
                Ok(Matrix2::new((*a).into(), (*b).into(), (*c).into(), (*d).into()))
            }
            MatrixWire::Rational(entries) => {
                let parsed = entries
                    .iter()
                    .map(|s| s.parse::<Ratio<i64>>().map_err(|e| KnotAlgError::Parse(format!("{s:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = Matrix2::new(parsed[0], parsed[1], parsed[2], parsed[3]);
                m.to_integer()
                    .map(|i| i.to_eisenstein())
                    .ok_or_else(|| KnotAlgError::Domain("rational entries are not integral".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_inverses() {
        let m = int_matrix([[2, 1], [1, 1]]);
        assert!(m.is_special());
        assert_eq!(m.trace(), 3);
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        assert_eq!(m.pow(-2).unwrap().mul(&m.pow(2).unwrap()), IntMatrix::identity());
        assert_eq!(int_matrix([[2, 0], [0, 1]]).inverse(), None);
    }

    #[test]
    fn projective_helpers() {
        let i = int_matrix([[0, -1], [1, 0]]);
        assert!(i.mul(&i).is_projective_identity());
        assert!(!i.mul(&i).is_identity());
        assert!(i.projectively_eq(&i.neg()));
    }

    #[test]
    fn wire_round_trip() {
        let m = int_matrix([[2, 1], [1, 1]]);
        let w = MatrixWire::from(&m);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"ring":"Z","entries":[2,1,1,1]}"#);
        let e: MatrixWire = serde_json::from_str(r#"{"ring":"Z[w]","entries":[[1,0],[0,0],[0,-1],[1,0]]}"#).unwrap();
        let b = e.to_eisenstein().unwrap();
        assert_eq!(b.c, -Eisenstein::OMEGA);
        assert!(b.is_special());
    }
}
