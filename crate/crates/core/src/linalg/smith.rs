use std::fmt;

use super::IntegerMatrix;
use crate::error::{Error, Result};
use crate::scalar::IntegerScalar;

/// `left * input * right = diagonal`, with `left` and `right` unimodular and
/// the diagonal a divisibility chain of non-negative entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub left: IntegerMatrix<T>,
    pub diagonal: IntegerMatrix<T>,
    pub right: IntegerMatrix<T>,
    pub rank: usize,
}

impl<T: IntegerScalar> SmithForm<T> {
    /// The non-zero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    /// Checks every defining property against `input`.
    pub fn verify(&self, input: &IntegerMatrix<T>) -> Result<bool> {
        let product = self.left.mul(input)?.mul(&self.right)?;
        if product != self.diagonal || !self.diagonal.is_diagonal() {
            return Ok(false);
        }
        if !self.left.is_unimodular()? || !self.right.is_unimodular()? {
            return Ok(false);
        }
        let n = self.diagonal.rows().min(self.diagonal.cols());
        for i in 0..n {
            let d = &self.diagonal[(i, i)];
            if d.is_negative() || (i < self.rank) == d.is_zero() {
                return Ok(false);
            }
            if i + 1 < self.rank && !(self.diagonal[(i + 1, i + 1)].clone() % d.clone()).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn smallest_nonzero<T: IntegerScalar>(d: &IntegerMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if !a.is_zero() && best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest non-zero entry of row `t` / column `t` at or beyond the diagonal.
fn smallest_in_cross<T: IntegerScalar>(d: &IntegerMatrix<T>, t: usize) -> (usize, usize) {
    let mut best = (t, t, d[(t, t)].abs());
    let cands = (t + 1..d.rows())
        .map(|i| (i, t))
        .chain((t + 1..d.cols()).map(|j| (t, j)));
    for (i, j) in cands {
        let a = d[(i, j)].abs();
        if !a.is_zero() && (best.2.is_zero() || a < best.2) {
            best = (i, j, a);
        }
    }
    (best.0, best.1)
}

pub fn smith_normal_form<T: IntegerScalar>(input: &IntegerMatrix<T>) -> Result<SmithForm<T>> {
    let (m, n) = (input.rows(), input.cols());
    let mut d = input.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let (pi, pj) = smallest_in_cross(&d, t);
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].clone() / pivot.clone();
                d.row_sub_mul(i, t, &q)?;
                u.row_sub_mul(i, t, &q)?;
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].clone() / pivot.clone();
                d.col_sub_mul(j, t, &q)?;
                v.col_sub_mul(j, t, &q)?;
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row t and column t are clear; enforce pivot | rest of the block.
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(d[(i, j)].clone() % pivot.clone()).is_zero())
            });
            match offender {
                Some(i) => {
                    let minus_one = -T::one();
                    d.row_sub_mul(t, i, &minus_one)?;
                    u.row_sub_mul(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    Ok(SmithForm {
        left: u,
        diagonal: d,
        right: v,
        rank,
    })
}

/// Some integer `x` with `a * x = b`, or `None` when no integer solution exists.
pub fn solve_integer_linear<T: IntegerScalar>(
    a: &IntegerMatrix<T>,
    b: &[T],
) -> Result<Option<Vec<T>>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let snf = smith_normal_form(a)?;
    let c = snf.left.mul_vec(b)?;
    let mut y = vec![T::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let d = &snf.diagonal[(i, i)];
            if !(ci.clone() % d.clone()).is_zero() {
                return Ok(None);
            }
            y[i] = ci.clone() / d.clone();
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.right.mul_vec(&y)?))
}

/// A basis of the integer kernel, one column per basis vector.
pub fn kernel_basis<T: IntegerScalar>(a: &IntegerMatrix<T>) -> Result<IntegerMatrix<T>> {
    let snf = smith_normal_form(a)?;
    let n = a.cols();
    let mut k = IntegerMatrix::zeros(n, n - snf.rank);
    for (c, j) in (snf.rank..n).enumerate() {
        for i in 0..n {
            k[(i, c)] = snf.right[(i, j)].clone();
        }
    }
    Ok(k)
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with
/// `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup<T> {
    pub rank: usize,
    pub torsion: Vec<T>,
}

impl<T: IntegerScalar> FgAbelianGroup<T> {
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Result<Option<T>> {
        if self.rank > 0 {
            return Ok(None);
        }
        self.torsion
            .iter()
            .try_fold(T::one(), |acc, t| acc.mul_checked(t))
            .map(Some)
    }

    /// Reads the group off a Smith diagonal of a presentation matrix with
    /// `generators` rows.
    fn from_diagonal(diagonal: &[T], generators: usize) -> Self {
        let torsion: Vec<T> = diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        Self {
            rank: generators - diagonal.len(),
            torsion,
        }
    }
}

impl<T: IntegerScalar> fmt::Display for FgAbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// The cokernel `Z^rows / im(a)`.
pub fn cokernel<T: IntegerScalar>(a: &IntegerMatrix<T>) -> Result<FgAbelianGroup<T>> {
    let snf = smith_normal_form(a)?;
    Ok(FgAbelianGroup::from_diagonal(
        &snf.invariant_factors(),
        a.rows(),
    ))
}
