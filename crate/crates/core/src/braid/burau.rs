//! Alexander polynomials of braid closures via the reduced Burau representation.

use super::laurent::{determinant, LaurentPolynomial};
use super::word::{BraidWord, Letter};
use super::BraidError;

type PolyMatrix = Vec<Vec<LaurentPolynomial>>;

fn identity(dim: usize) -> PolyMatrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { LaurentPolynomial::one() } else { LaurentPolynomial::zero() })
                .collect()
        })
        .collect()
}

/// The 3x3 block of the reduced Burau image of `σ_i^{±1}`, acting on the
/// reduced coordinates `i-2, i-1, i` (0-based). Rows/columns falling outside
/// `0..n-1` are dropped for the end generators.
fn generator_block(sign: i8) -> [[LaurentPolynomial; 3]; 3] {
    let z = LaurentPolynomial::zero;
    let one = LaurentPolynomial::one;
    if sign > 0 {
        let t = LaurentPolynomial::t();
        [[one(), t.clone(), z()], [z(), -&t, z()], [z(), one(), one()]]
    } else {
        let tinv = LaurentPolynomial::monomial(1, -1);
        [[one(), one(), z()], [z(), -&tinv, z()], [z(), tinv, one()]]
    }
}

/// Reduced Burau matrix of a single letter on `strands` strands.
pub fn reduced_burau_letter(strands: u32, letter: Letter) -> PolyMatrix {
    let dim = strands as usize - 1;
    let mut m = identity(dim);
    let block = generator_block(letter.sign);
    let base = letter.index as i64 - 2;
    for (r, row) in block.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let (gr, gc) = (base + r as i64, base + c as i64);
            if (0..dim as i64).contains(&gr) && (0..dim as i64).contains(&gc) {
                m[gr as usize][gc as usize] = entry.clone();
            }
        }
    }
    m
}

/// Product of the reduced Burau matrices of all letters, left to right.
pub fn reduced_burau(word: &BraidWord) -> PolyMatrix {
    let dim = word.strands() as usize - 1;
    let mut m = identity(dim);
    for &letter in word.letters() {
        let block = generator_block(letter.sign);
        let base = letter.index as i64 - 2;
        let cols: Vec<usize> = (0..3)
            .map(|k| base + k)
            .filter(|&c| (0..dim as i64).contains(&c))
            .map(|c| c as usize)
            .collect();
        // right-multiplication only touches the block columns
        let mut new_cols: Vec<Vec<LaurentPolynomial>> = Vec::with_capacity(cols.len());
        for &c in &cols {
            let bc = (c as i64 - base) as usize;
            let col: Vec<LaurentPolynomial> = (0..dim)
                .map(|r| {
                    let mut acc = LaurentPolynomial::zero();
                    for &k in &cols {
                        let g = &block[(k as i64 - base) as usize][bc];
                        if !g.is_zero() && !m[r][k].is_zero() {
                            acc = &acc + &(&m[r][k] * g);
                        }
                    }
                    acc
                })
                .collect();
            new_cols.push(col);
        }
        for (&c, col) in cols.iter().zip(new_cols) {
            for (r, v) in col.into_iter().enumerate() {
                m[r][c] = v;
            }
        }
    }
    m
}

/// Alexander polynomial of the closure of `word`, which must be a knot.
///
/// `Δ(t) ≐ det(I - B(t)) · (1 - t) / (1 - t^n)`, normalized to a centred
/// exponent window with positive leading coefficient.
pub fn alexander_from_braid(word: &BraidWord) -> Result<LaurentPolynomial, BraidError> {
    let components = word.closure_components();
    if components != 1 {
        return Err(BraidError::Domain(format!(
            "closure has {components} components; single-variable Alexander needs a knot"
        )));
    }
    let n = word.strands() as usize;
    let burau = reduced_burau(word);
    let dim = n - 1;
    let mut m: PolyMatrix = Vec::with_capacity(dim);
    for (i, row) in burau.iter().enumerate() {
        let mut r: Vec<LaurentPolynomial> = row.iter().map(|e| -e).collect();
        r[i] = &r[i] + &LaurentPolynomial::one();
        m.push(r);
    }
    let det = determinant(&m);
    let divisor = LaurentPolynomial::from_coeffs(&vec![1; n]);
    let delta = det
        .div_exact(&divisor)
        .ok_or_else(|| BraidError::Internal(format!("det(I - B) = {det} not divisible by [n]_t")))?
        .normalized();
    let at_one = delta.eval_i64(1);
    if at_one.abs() != 1 {
        return Err(BraidError::Internal(format!("Δ(1) = {at_one}, expected ±1")));
    }
    Ok(delta)
}
