//! Finitely presented groups and their evaluation under 2×2 matrix
//! representations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{int_matrix, EisensteinMatrix, Matrix2};
use super::ring::{Eisenstein, ExactRing};
use super::twist::{parse_exponent, TwistGen};
use super::KnotAlgError;

/// Word as `(generator index, exponent)` syllables.
pub type GroupWord = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    /// Source text of the relation.
    pub text: String,
    pub word: GroupWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

fn parse_word(text: &str, generators: &mut Vec<String>, declared: bool) -> Result<GroupWord, KnotAlgError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    if chars == ['1'] {
        return Ok(out);
    }
    if chars.is_empty() {
        return Err(KnotAlgError::Parse("empty word".into()));
    }
    while i < chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphabetic() {
            return Err(KnotAlgError::Parse(format!("unexpected {c:?} in {text:?}")));
        }
        let name = c.to_string();
        let idx = match generators.iter().position(|g| *g == name) {
            Some(k) => k,
            None if declared => {
                return Err(KnotAlgError::Parse(format!("undeclared generator {name:?} in {text:?}")));
            }
            None => {
                generators.push(name);
                generators.len() - 1
            }
        };
        i += 1;
        let (e, used) =
            parse_exponent(&chars[i..]).ok_or_else(|| KnotAlgError::Parse(format!("bad exponent in {text:?}")))?;
        i += used;
        out.push((idx, e));
    }
    Ok(out)
}

fn inverse_word(w: &GroupWord) -> GroupWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

impl Presentation {
    /// Parses `<a, b | r1, r2, ...>` (the angle brackets are optional). A
    /// relation is a word, `lhs = rhs`, or a chain `w1 = w2 = ... = wk`;
    /// relations are separated by `,` or `;`. Generators are single letters;
    /// when the generator list is empty they are collected in order of
    /// appearance.
    pub fn parse(s: &str) -> Result<Self, KnotAlgError> {
        let body = s.trim().trim_start_matches('<').trim_end_matches('>');
        let (gens_text, rels_text) = body
            .split_once('|')
            .ok_or_else(|| KnotAlgError::Parse(format!("missing '|' in presentation {s:?}")))?;
        let mut generators: Vec<String> = gens_text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|g| !g.is_empty())
            .map(str::to_string)
            .collect();
        if let Some(bad) = generators.iter().find(|g| g.chars().count() != 1) {
            return Err(KnotAlgError::Parse(format!("generator names must be single letters, got {bad:?}")));
        }
        let declared = !generators.is_empty();
        let mut relators = Vec::new();
        for rel in rels_text.split([',', ';']).map(str::trim).filter(|r| !r.is_empty()) {
            let sides = rel
                .split('=')
                .map(|side| parse_word(side, &mut generators, declared))
                .collect::<Result<Vec<_>, _>>()?;
            if sides.len() == 1 {
                relators.push(Relator { text: rel.to_string(), word: sides[0].clone() });
            }
            for pair in sides.windows(2) {
                let mut w = pair[0].clone();
                w.extend(inverse_word(&pair[1]));
                relators.push(Relator { text: rel.to_string(), word: w });
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn word_to_string(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{e}", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(&r.word)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorResult {
    pub relation: String,
    pub relator: String,
    pub value: String,
    pub exact: bool,
    pub projective: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub projective: bool,
    pub relators: Vec<RelatorResult>,
    pub all_pass: bool,
}

/// Evaluates every relator under `assignment`. A relator passes when its
/// image is `I` (or `±I` when `projective`). Passing is necessary for the
/// assignment to define a representation; it decides nothing about the
/// group itself.
pub fn presentation_check<T: ExactRing>(
    pres: &Presentation,
    assignment: &BTreeMap<String, Matrix2<T>>,
    projective: bool,
) -> Result<PresentationReport, KnotAlgError> {
    let mut images = Vec::with_capacity(pres.generators.len());
    for g in &pres.generators {
        let m = assignment
            .get(g)
            .ok_or_else(|| KnotAlgError::Parameter(format!("no matrix assigned to generator {g:?}")))?;
        let inv = m.inverse().ok_or_else(|| KnotAlgError::Domain(format!("matrix for {g:?} is singular")))?;
        images.push((m.clone(), inv));
    }
    let mut results = Vec::new();
    for r in &pres.relators {
        let mut acc = Matrix2::<T>::identity();
        for &(g, e) in &r.word {
            let base = if e < 0 { &images[g].1 } else { &images[g].0 };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(base);
            }
        }
        let exact = acc.is_identity();
        let proj = acc.is_projective_identity();
        results.push(RelatorResult {
            relation: r.text.clone(),
            relator: pres.word_to_string(&r.word),
            value: acc.to_string(),
            exact,
            projective: proj,
            pass: if projective { proj } else { exact },
        });
    }
    let all_pass = results.iter().all(|r| r.pass);
    Ok(PresentationReport { projective, relators: results, all_pass })
}

/// Reduces a relator in a group where each generator in `involutions`
/// squares to 1: exponents of those generators are taken mod 2, adjacent
/// syllables merge, and the word is cyclically reduced.
pub fn reduce_with_involutions(w: &GroupWord, involutions: &[usize]) -> GroupWord {
    let mut out: GroupWord = Vec::new();
    let push = |out: &mut GroupWord, (g, e): (usize, i64)| {
        let mut e = e;
        if let Some(&(h, f)) = out.last() {
            if h == g {
                out.pop();
                e += f;
            }
        }
        if involutions.contains(&g) {
            e = e.rem_euclid(2);
        }
        if e != 0 {
            out.push((g, e));
        }
    };
    for &s in w {
        push(&mut out, s);
    }
    loop {
        if out.len() >= 2 && out[0].0 == out[out.len() - 1].0 {
            let (g, e) = out.pop().expect("nonempty");
            let first = out.remove(0);
            let mut rest = std::mem::take(&mut out);
            push(&mut out, (g, e + first.1));
            for s in rest.drain(..) {
                push(&mut out, s);
            }
            continue;
        }
        break;
    }
    out
}

/// True when the two relators agree, modulo the involution relations, up to
/// cyclic rotation and inversion, so that they have the same normal closure.
pub fn equivalent_modulo_involutions(r1: &GroupWord, r2: &GroupWord, involutions: &[usize]) -> bool {
    let a = reduce_with_involutions(r1, involutions);
    let b = reduce_with_involutions(r2, involutions);
    if a.len() != b.len() {
        return false;
    }
    let binv = reduce_with_involutions(&inverse_word(&b), involutions);
    (0..a.len().max(1)).any(|k| {
        let rot: GroupWord = a[k..].iter().chain(&a[..k]).copied().collect();
        rot == b || rot == binv
    })
}

fn m(rows: [[i64; 2]; 2]) -> EisensteinMatrix {
    int_matrix(rows).to_eisenstein()
}

fn twist(g: TwistGen) -> EisensteinMatrix {
    g.matrix().to_eisenstein()
}

fn inv(x: &EisensteinMatrix) -> EisensteinMatrix {
    x.inverse().expect("SL(2) matrices are invertible")
}

/// `a = [[1, 1], [0, 1]]`, `b = [[1, 0], [-ω, 1]]` for the root `ω` (or its
/// conjugate `ω² = -1 - ω` when `conjugate_root`).
pub fn figure_eight_generators(conjugate_root: bool) -> (EisensteinMatrix, EisensteinMatrix) {
    let w = if conjugate_root { Eisenstein::OMEGA.conj() } else { Eisenstein::OMEGA };
    let one = Eisenstein::one();
    let zero = Eisenstein::zero();
    (Matrix2::new(one, one, zero, one), Matrix2::new(one, zero, -w, one))
}

/// Built-in presentation with its reference representation over ℤ[ω].
#[derive(Clone, Debug)]
pub struct NamedPresentation {
    pub name: &'static str,
    pub presentation: Presentation,
    pub assignment: BTreeMap<String, EisensteinMatrix>,
    pub projective: bool,
}

fn named(
    name: &'static str,
    text: &str,
    assignment: Vec<(&str, EisensteinMatrix)>,
    projective: bool,
) -> NamedPresentation {
    NamedPresentation {
        name,
        presentation: Presentation::parse(text).expect("built-in presentation parses"),
        assignment: assignment.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        projective,
    }
}

/// Names accepted by [`builtin_presentation`].
pub const BUILTIN_NAMES: [&str; 8] = [
    "trefoil-quotient",
    "figure-eight",
    "figure-eight-as-printed",
    "figure-eight-wirtinger",
    "figure-eight-xyz",
    "figure-eight-xyz-uncorrected",
    "d2",
    "d2-twisted",
];

pub fn builtin_presentation(name: &str, conjugate_root: bool) -> Option<NamedPresentation> {
    let (a, b) = figure_eight_generators(conjugate_root);
    let c = inv(&b).mul(&a).mul(&b);
    let d = inv(&a).mul(&b).mul(&a);
    let w = inv(&b).mul(&a).mul(&b).mul(&inv(&a));
    let xyz = || vec![("x", inv(&c)), ("y", d.clone()), ("z", inv(&b))];
    let i = twist(TwistGen::I);
    Some(match name {
        "trefoil-quotient" => named(
            "trefoil-quotient",
            "<a, b | a^3 = 1, b^2 = 1>",
            vec![("a", i.mul(&twist(TwistGen::R))), ("b", i.clone())],
            true,
        ),
        "figure-eight" => named(
            "figure-eight",
            "<a, b, w | a w = w b, w = b^-1 a b a^-1>",
            vec![("a", a.clone()), ("b", b.clone()), ("w", w.clone())],
            false,
        ),
        "figure-eight-as-printed" => named(
            "figure-eight-as-printed",
            "<a, b, w | w a = b w, w = b^-1 a b a^-1>",
            vec![("a", a.clone()), ("b", b.clone()), ("w", w.clone())],
            false,
        ),
        "figure-eight-wirtinger" => named(
            "figure-eight-wirtinger",
            "<a, b, c, d | b c b^-1 = a, a d a^-1 = b, d^-1 b d = c, c^-1 a c = d>",
            vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("d", d.clone())],
            false,
        ),
        "figure-eight-xyz" => {
            named("figure-eight-xyz", "<x, y, z | z x^-1 y x z^-1 x = 1, x y^-1 z^-1 y = 1>", xyz(), false)
        }
        "figure-eight-xyz-uncorrected" => {
            named("figure-eight-xyz-uncorrected", "<x, y, z | z x^-1 y z^-1 x = 1, x y^-1 z^-1 y = 1>", xyz(), false)
        }
        "d2" => named(
            "d2",
            "<t, s | t^2 = s^2 = 1, t s = s t>",
            vec![("t", m([[-1, 0], [0, 1]])), ("s", m([[1, 0], [0, -1]]))],
            false,
        ),
        "d2-twisted" => named(
            "d2-twisted",
            "<s, t | t^2 = 1, s^2 = 1, t s t = s^-1>",
            vec![("t", m([[-1, 0], [0, 1]])), ("s", m([[1, 0], [0, -1]]))],
            false,
        ),
        _ => return None,
    })
}
