//! Exact inertia of symmetric integer matrices.
//!
//! Symmetric Gaussian elimination over the rationals (congruence
//! diagonalization). No floating point is involved, so sign decisions
//! are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Counts of positive, negative and zero diagonal entries after
/// diagonalization by congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_negative_semidefinite(&self) -> bool {
        self.positive == 0
    }
}

/// Diagonal of a matrix congruent to `gram`.
pub fn congruence_diagonal(gram: &[Vec<BigInt>]) -> Vec<BigRational> {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().cloned().map(BigRational::from_integer).collect()
        })
        .collect();
    let mut diag = Vec::with_capacity(n);

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_symmetric(&mut a, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // All remaining diagonal entries vanish: add row/col j to
                // row/col i, giving a_ii = 2 a_ij != 0.
                add_symmetric(&mut a, i, j);
                swap_symmetric(&mut a, k, i);
            } else {
                diag.extend(std::iter::repeat_n(BigRational::zero(), n - k));
                return diag;
            }
        }

        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
            for j in k..n {
                let delta = &f * &a[j][k];
                a[j][i] -= delta;
            }
        }
        diag.push(pivot);
    }
    diag
}

pub fn inertia(gram: &[Vec<BigInt>]) -> Inertia {
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for d in congruence_diagonal(gram) {
        if d.is_positive() {
            out.positive += 1;
        } else if d.is_negative() {
            out.negative += 1;
        } else {
            out.zero += 1;
        }
    }
    out
}

fn swap_symmetric(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

// row_i += row_j; col_i += col_j
fn add_symmetric(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn hyperbolic_plane() {
        let s = inertia(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(s, Inertia { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn affine_a1_is_semidefinite() {
        let s = inertia(&m(&[&[-2, 2], &[2, -2]]));
        assert_eq!(s, Inertia { positive: 0, negative: 1, zero: 1 });
    }

    #[test]
    fn zero_matrix() {
        let s = inertia(&m(&[&[0, 0], &[0, 0]]));
        assert_eq!(s.zero, 2);
    }

    #[test]
    fn definite_e8_like() {
        // -A3 Cartan matrix is negative definite
        let s = inertia(&m(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]));
        assert_eq!(s, Inertia { positive: 0, negative: 3, zero: 0 });
    }

    #[test]
    fn diagonal_product_matches_determinant() {
        let g = m(&[&[1, 2, 3], &[2, 0, 1], &[3, 1, 5]]);
        let d = congruence_diagonal(&g);
        let det: BigRational = d.iter().cloned().fold(BigRational::from_integer(1.into()), |a, b| a * b);
        // det computed by cofactor expansion: 1(0-1) - 2(10-3) + 3(2-0) = -9
        assert_eq!(det, BigRational::from_integer((-9).into()));
    }
}
