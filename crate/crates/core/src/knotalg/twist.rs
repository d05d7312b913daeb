//! Words in the Dehn twists `L`, `R` and the rotation `I` of SL(2, ℤ).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{int_matrix, IntMatrix};
use super::KnotAlgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistGen {
    L,
    R,
    I,
}

impl TwistGen {
    pub fn matrix(self) -> IntMatrix {
        match self {
            TwistGen::L => int_matrix([[1, 0], [1, 1]]),
            TwistGen::R => int_matrix([[1, 1], [0, 1]]),
            TwistGen::I => int_matrix([[0, -1], [1, 0]]),
        }
    }

    fn as_char(self) -> char {
        match self {
            TwistGen::L => 'L',
            TwistGen::R => 'R',
            TwistGen::I => 'I',
        }
    }
}

/// Product of generator powers, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwistWord(pub Vec<(TwistGen, i64)>);

impl TwistWord {
    pub fn eval(&self) -> IntMatrix {
        self.0.iter().fold(IntMatrix::identity(), |acc, &(g, e)| {
            acc.mul(&g.matrix().pow(e).expect("twist generators are invertible"))
        })
    }

    /// Merges adjacent powers of the same generator and rewrites `I^k` with
    /// `I² = -1`; returns the accumulated sign and the reduced word.
    pub fn simplify(&self) -> (i64, TwistWord) {
        let mut sign = 1;
        let mut out: Vec<(TwistGen, i64)> = Vec::new();
        for &(g, e) in &self.0 {
            let mut e = e;
            if let Some(last) = out.last_mut() {
                if last.0 == g {
                    e += last.1;
                    out.pop();
                }
            }
            if g == TwistGen::I {
                let r = e.rem_euclid(4);
                if r >= 2 {
                    sign = -sign;
                }
                e = r % 2;
            }
            if e != 0 {
                out.push((g, e));
            }
        }
        (sign, TwistWord(out))
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { g.as_char().to_string() } else { format!("{}^{e}", g.as_char()) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for TwistWord {
    type Err = KnotAlgError;

    /// Letters `L`, `R`, `I` with optional `^n` exponents; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let g = match chars[i] {
                'L' => TwistGen::L,
                'R' => TwistGen::R,
                'I' => TwistGen::I,
                '1' if chars.len() == 1 => break,
                c => return Err(KnotAlgError::Parse(format!("unexpected {c:?} in twist word {s:?}"))),
            };
            i += 1;
            let (e, used) = parse_exponent(&chars[i..])
                .ok_or_else(|| KnotAlgError::Parse(format!("bad exponent in twist word {s:?}")))?;
            i += used;
            out.push((g, e));
        }
        Ok(TwistWord(out))
    }
}

/// Parses an optional `^n` / `^-n` / `^{n}`; returns `(1, 0)` when absent.
pub(crate) fn parse_exponent(chars: &[char]) -> Option<(i64, usize)> {
    if chars.first() != Some(&'^') {
        return Some((1, 0));
    }
    let mut i = 1;
    let braced = chars.get(i) == Some(&'{');
    if braced {
        i += 1;
    }
    let start = i;
    if matches!(chars.get(i), Some('-') | Some('+')) {
        i += 1;
    }
    while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
        i += 1;
    }
    let text: String = chars[start..i].iter().collect();
    let e = text.parse().ok()?;
    if braced {
        if chars.get(i) != Some(&'}') {
            return None;
        }
        i += 1;
    }
    Some((e, i))
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn twist_word_eval(w: &TwistWord) -> IntMatrix {
    w.eval()
}

/// `U = -I`.
pub fn ghys_u() -> IntMatrix {
    TwistGen::I.matrix().neg()
}

/// `V = R⁻¹`.
pub fn ghys_v() -> IntMatrix {
    TwistGen::R.matrix().inverse().expect("R is invertible")
}

/// `U V^{ε1} U V^{ε2} ··· U V^{εn}`.
pub fn ghys_word_eval(eps: &[i8]) -> Result<IntMatrix, KnotAlgError> {
    if eps.is_empty() {
        return Err(KnotAlgError::Parameter("empty ε sequence".into()));
    }
    let (u, v) = (ghys_u(), ghys_v());
    let mut acc = IntMatrix::identity();
    for &e in eps {
        let ve = match e {
            1 => v.clone(),
            -1 => v.inverse().expect("V is invertible"),
            other => return Err(KnotAlgError::Parameter(format!("ε must be ±1, got {other}"))),
        };
        acc = acc.mul(&u).mul(&ve);
    }
    Ok(acc)
}

/// Rewrites a Ghys word in `L`, `R`, `I` using `U = -I`, `V⁻¹ = R` and
/// `V = -I L I`; returns `(sign, word)` with `ghys_word_eval(eps) = sign · eval(word)`.
pub fn ghys_to_twist(eps: &[i8]) -> Result<(i64, TwistWord), KnotAlgError> {
    let mut sign = 1;
    let mut letters = Vec::new();
    for &e in eps {
        sign = -sign;
        letters.push((TwistGen::I, 1));
        match e {
            1 => {
                sign = -sign;
                letters.extend([(TwistGen::I, 1), (TwistGen::L, 1), (TwistGen::I, 1)]);
            }
            -1 => letters.push((TwistGen::R, 1)),
            other => return Err(KnotAlgError::Parameter(format!("ε must be ±1, got {other}"))),
        }
    }
    let (s, w) = TwistWord(letters).simplify();
    Ok((sign * s, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: String,
    pub rhs: String,
    pub exact: bool,
    pub projective: bool,
}

/// Relations among `L`, `R`, `I`, checked exactly and up to sign.
pub fn twist_identities() -> Vec<IdentityCheck> {
    let cases = [
        ("L^-1", "I R I"),
        ("R^-1", "I L I"),
        ("L I L", "R"),
        ("R I R", "L"),
        ("R I L", "I"),
        ("L I R", "I"),
        ("I^2", "1"),
    ];
    cases
        .iter()
        .map(|&(l, r)| {
            let a = l.parse::<TwistWord>().expect("static word").eval();
            let b = r.parse::<TwistWord>().expect("static word").eval();
            IdentityCheck { lhs: l.into(), rhs: r.into(), exact: a == b, projective: a.projectively_eq(&b) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    #[test]
    fn basic_products() {
        assert_eq!(w("R L").eval(), int_matrix([[2, 1], [1, 1]]));
        assert_eq!(w("RL").eval(), int_matrix([[2, 1], [1, 1]]));
        assert_eq!(w("I^2").eval(), IntMatrix::identity().neg());
        assert!(w("I^2").eval().is_projective_identity());
        assert_eq!(w("L I L").eval(), w("R").eval().neg());
        assert_eq!(w("1").eval(), IntMatrix::identity());
        assert!("L X".parse::<TwistWord>().is_err());
        assert_eq!(w("R^{-2}").0, vec![(TwistGen::R, -2)]);
    }

    #[test]
    fn conjugated_monodromy() {
        // L⁻¹ (R L) R⁻¹ = [[2, -1], [-1, 1]]
        assert_eq!(w("L^-1 R L R^-1").eval(), int_matrix([[2, -1], [-1, 1]]));
    }

    #[test]
    fn identities_report_sign_discrepancies() {
        let checks = twist_identities();
        let get = |l: &str, r: &str| checks.iter().find(|c| c.lhs == l && c.rhs == r).unwrap().clone();
        assert!(get("L I L", "R").projective && !get("L I L", "R").exact);
        assert!(get("R I R", "L").exact);
        assert!(get("R I L", "I").exact);
        assert!(get("L I R", "I").exact);
        assert!(get("L^-1", "I R I").projective && !get("L^-1", "I R I").exact);
        assert!(get("I^2", "1").projective && !get("I^2", "1").exact);
        assert!(checks.iter().all(|c| c.projective));
    }

    #[test]
    fn ghys_words() {
        let one = ghys_word_eval(&[1]).unwrap();
        assert_eq!(one, ghys_u().mul(&ghys_v()));
        assert!(ghys_word_eval(&[1, -1]).is_ok());
        assert!(ghys_word_eval(&[]).is_err());
        assert!(ghys_word_eval(&[2]).is_err());
        // V V⁻¹ collapses
        assert!(ghys_v().mul(&ghys_v().inverse().unwrap()).is_identity());
    }

    #[test]
    fn ghys_conversion_is_exact() {
        let seqs: Vec<Vec<i8>> = vec![vec![1], vec![-1], vec![1, -1], vec![1, 1, -1, 1, -1, -1], vec![-1, -1, -1]];
        for eps in seqs {
            let (sign, word) = ghys_to_twist(&eps).unwrap();
            assert_eq!(ghys_word_eval(&eps).unwrap(), word.eval().scale(&sign), "{eps:?}");
        }
        let (_, word) = ghys_to_twist(&[1, -1, 1, -1]).unwrap();
        assert_eq!(word.to_string(), "L R L R");
    }

    #[test]
    fn simplify_collapses_rotations() {
        assert_eq!(w("I I").simplify(), (-1, TwistWord::default()));
        assert_eq!(w("L L^-1 R").simplify(), (1, w("R")));
        assert_eq!(w("I^3").simplify(), (-1, w("I")));
    }
}
