//! Kirby calculus on linking matrices of framed links.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirbyError {
    #[error("invalid framed link: {0}")]
    Invalid(String),
    #[error("invalid move parameter: {0}")]
    Parameter(String),
    #[error("blow-down needs framing ±1, component {index} has {framing}")]
    Framing { index: usize, framing: i64 },
}

/// Labelled components and their linking matrix: framings on the diagonal,
/// pairwise linking numbers off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLink")]
pub struct FramedLink {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawLink {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<RawLink> for FramedLink {
    type Error = KirbyError;
    fn try_from(r: RawLink) -> Result<Self, KirbyError> {
        FramedLink::new(r.labels, r.matrix)
    }
}

impl FramedLink {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self, KirbyError> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(KirbyError::Invalid(format!("{n} labels but matrix is not {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(KirbyError::Invalid(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(FramedLink { labels, matrix })
    }

    /// Components labelled `L1`, `L2`, ...
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<Self, KirbyError> {
        let labels = (1..=matrix.len()).map(|k| format!("L{k}")).collect();
        Self::new(labels, matrix)
    }

    pub fn empty() -> Self {
        FramedLink { labels: Vec::new(), matrix: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn framing(&self, i: usize) -> i64 {
        self.matrix[i][i]
    }

    pub fn linking(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    fn check_index(&self, i: usize) -> Result<(), KirbyError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(KirbyError::Parameter(format!("component {i} out of range (link has {})", self.len())))
        }
    }

    fn fresh_label(&self) -> String {
        (1..).map(|k| format!("U{k}")).find(|l| !self.labels.contains(l)).expect("unbounded")
    }
}

/// Sum of crossing signs between two components.
pub fn linking_number(signs: &[i8]) -> i64 {
    signs.iter().map(|&s| i64::from(s)).sum()
}

/// Linking number from all crossings between two components of a diagram,
/// each of which is counted twice: half the sign sum.
pub fn diagram_linking_number(signs: &[i8]) -> Result<i64, KirbyError> {
    let s = linking_number(signs);
    if s % 2 != 0 {
        return Err(KirbyError::Parameter(format!("crossing sum {s} is odd")));
    }
    Ok(s / 2)
}

/// Adds a split unknot with framing `sign`.
pub fn blow_up(link: &FramedLink, sign: i8) -> Result<FramedLink, KirbyError> {
    if sign != 1 && sign != -1 {
        return Err(KirbyError::Parameter(format!("blow-up sign must be ±1, got {sign}")));
    }
    let n = link.len();
    let mut matrix: Vec<Vec<i64>> = link.matrix.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
    let mut last = vec![0; n + 1];
    last[n] = i64::from(sign);
    matrix.push(last);
    let mut labels = link.labels.clone();
    labels.push(link.fresh_label());
    Ok(FramedLink { labels, matrix })
}

/// Removes a `±1`-framed component `i`, twisting the others:
/// `A[j][k] -= ε A[j][i] A[i][k]`.
pub fn blow_down(link: &FramedLink, i: usize) -> Result<FramedLink, KirbyError> {
    link.check_index(i)?;
    let eps = link.framing(i);
    if eps.abs() != 1 {
        return Err(KirbyError::Framing { index: i, framing: eps });
    }
    let keep: Vec<usize> = (0..link.len()).filter(|&k| k != i).collect();
    let a = &link.matrix;
    let matrix = keep.iter().map(|&j| keep.iter().map(|&k| a[j][k] - eps * a[j][i] * a[i][k]).collect()).collect();
    let labels = keep.iter().map(|&k| link.labels[k].clone()).collect();
    Ok(FramedLink { labels, matrix })
}

/// Slides component `i` over component `j`; `sign = -1` uses the reversed
/// orientation of `j` and undoes a positive slide. Framing of `i` becomes
/// `n_i + n_j + 2 sign lk(i, j)`.
pub fn handle_slide(link: &FramedLink, i: usize, j: usize, sign: i8) -> Result<FramedLink, KirbyError> {
    link.check_index(i)?;
    link.check_index(j)?;
    if i == j {
        return Err(KirbyError::Parameter("cannot slide a component over itself".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(KirbyError::Parameter(format!("slide sign must be ±1, got {sign}")));
    }
    let s = i64::from(sign);
    let a = &link.matrix;
    let mut m = a.clone();
    for k in 0..link.len() {
        if k != i {
            m[i][k] = a[i][k] + s * a[j][k];
            m[k][i] = m[i][k];
        }
    }
    m[i][i] = a[i][i] + a[j][j] + 2 * s * a[i][j];
    Ok(FramedLink { labels: link.labels.clone(), matrix: m })
}

/// Exact determinant by fraction-free elimination.
pub fn det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric matrix by
/// exact rational congruence diagonalization.
pub fn inertia(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i128>>> =
        a.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(i128::from(x))).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&k| !m[k][k].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonals vanish: add a linked row/column to create one
                let pair = active
                    .iter()
                    .flat_map(|&k| active.iter().map(move |&l| (k, l)))
                    .find(|&(k, l)| k != l && !m[k][l].is_zero());
                let Some((k, l)) = pair else { break };
                for r in 0..n {
                    let v = m[r][l];
                    m[r][k] += v;
                }
                for c in 0..n {
                    let v = m[l][c];
                    m[k][c] += v;
                }
                k
            }
        };
        let d = m[p][p];
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&k| k != p);
        for &r in &active {
            let f = m[r][p] / d;
            for &c in &active {
                let v = m[p][c];
                m[r][c] -= f * v;
            }
        }
        for &r in &active {
            m[r][p] = Ratio::zero();
            m[p][r] = Ratio::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

pub fn signature(a: &[Vec<i64>]) -> i64 {
    let (p, q, _) = inertia(a);
    p as i64 - q as i64
}

/// One step of a Kirby-move script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum KirbyMove {
    BlowUp { sign: i8 },
    BlowDown { i: usize },
    Slide {
        i: usize,
        j: usize,
        #[serde(default = "positive")]
        sign: i8,
    },
}

fn positive() -> i8 {
    1
}

pub fn apply_move(link: &FramedLink, mv: &KirbyMove) -> Result<FramedLink, KirbyError> {
    match *mv {
        KirbyMove::BlowUp { sign } => blow_up(link, sign),
        KirbyMove::BlowDown { i } => blow_down(link, i),
        KirbyMove::Slide { i, j, sign } => handle_slide(link, i, j, sign),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    pub applied: KirbyMove,
    pub link: FramedLink,
    pub det: i128,
    pub signature: i64,
}

/// Applies `moves` in order, recording determinant and signature after each.
pub fn apply_moves(link: &FramedLink, moves: &[KirbyMove]) -> Result<Vec<MoveStep>, KirbyError> {
    let mut cur = link.clone();
    let mut out = Vec::with_capacity(moves.len());
    for mv in moves {
        cur = apply_move(&cur, mv)?;
        out.push(MoveStep { applied: mv.clone(), det: det(cur.matrix()), signature: signature(cur.matrix()), link: cur.clone() });
    }
    Ok(out)
}
