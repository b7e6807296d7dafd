//! Hermite and Smith normal forms over ℤ, and lattice helpers built on them.
//!
//! Lattices are given by generating columns. The column HNF produced here is
//! upper triangular in its pivot block: pivots sit at the bottom of their
//! columns, are positive, and entries to the right of a pivot in its row are
//! reduced into `[0, pivot)`. Zero columns collect on the left.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;

pub type IntMatrix = Matrix<BigInt>;

/// Integer matrix from small row literals.
pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
}

pub fn int_identity(n: usize) -> IntMatrix {
    Matrix::from_fn(n, n, |r, c| if r == c { BigInt::one() } else { BigInt::zero() })
}

pub fn int_zeros(rows: usize, cols: usize) -> IntMatrix {
    Matrix::filled(rows, cols, BigInt::zero())
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let s = &m[(r, src)];
        if !s.is_zero() {
            let v = &m[(r, dst)] - q * s;
            m[(r, dst)] = v;
        }
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let s = &m[(src, c)];
        if !s.is_zero() {
            let v = &m[(dst, c)] - q * s;
            m[(dst, c)] = v;
        }
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for r in 0..m.rows() {
        let v = -&m[(r, c)];
        m[(r, c)] = v;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        let v = -&m[(r, c)];
        m[(r, c)] = v;
    }
}

/// Column Hermite normal form: returns `(H, U)` with `H = A·U` and `U` unimodular.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = int_identity(n);
    let mut k = n;
    for i in (0..m).rev() {
        if k == 0 {
            break;
        }
        loop {
            let piv = (0..k)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()));
            let Some(piv) = piv else { break };
            h.swap_cols(piv, k - 1);
            u.swap_cols(piv, k - 1);
            let p = h[(i, k - 1)].clone();
            let mut clean = true;
            for j in 0..k - 1 {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = &h[(i, j)] / &p;
                col_axpy(&mut h, j, k - 1, &q);
                col_axpy(&mut u, j, k - 1, &q);
                if !h[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(i, k - 1)].is_zero() {
            continue;
        }
        if h[(i, k - 1)].is_negative() {
            negate_col(&mut h, k - 1);
            negate_col(&mut u, k - 1);
        }
        let p = h[(i, k - 1)].clone();
        for j in k..n {
            let q = h[(i, j)].div_floor(&p);
            col_axpy(&mut h, j, k - 1, &q);
            col_axpy(&mut u, j, k - 1, &q);
        }
        k -= 1;
    }
    (h, u)
}

/// Smith normal form: returns `(U, D, V)` with `U·A·V = D`, `U` and `V` unimodular,
/// `D` diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (u, d, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &p;
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &p;
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    (u, d, v)
}

/// Diagonal of the Smith form (length `min(rows, cols)`).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = smith_normal_form(a);
    (0..a.rows().min(a.cols())).map(|i| d[(i, i)].clone()).collect()
}

/// Integer determinant by Bareiss fraction-free elimination.
pub fn det_bareiss(a: &IntMatrix) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// Nonzero columns of the HNF: a canonical basis of the column lattice.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(gens);
    let keep: Vec<usize> = (0..h.cols()).filter(|&c| (0..h.rows()).any(|r| !h[(r, c)].is_zero())).collect();
    h.select_columns(&keep)
}

/// Equality of the column lattices of two generator matrices in the same ambient ℤ^m.
pub fn lattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && lattice_basis(a) == lattice_basis(b)
}

/// Lattice generated by the columns of both matrices.
pub fn lattice_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    lattice_basis(&a.hstack(b))
}

/// Index of a full-rank sublattice of ℤ^m given by generating columns, or `None` if not full rank.
pub fn lattice_index(gens: &IntMatrix) -> Option<BigInt> {
    let basis = lattice_basis(gens);
    if basis.cols() != gens.rows() {
        return None;
    }
    Some(det_bareiss(&basis).abs())
}

/// ℤ-basis (as columns) of the integer kernel `{x : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(a);
    let zero_cols: Vec<usize> = (0..h.cols()).filter(|&c| (0..h.rows()).all(|r| h[(r, c)].is_zero())).collect();
    u.select_columns(&zero_cols)
}

/// Whether vector `v` lies in the column lattice of `gens`.
pub fn lattice_contains(gens: &IntMatrix, v: &[BigInt]) -> bool {
    let col = Matrix::from_fn(v.len(), 1, |r, _| v[r].clone());
    lattices_equal(gens, &gens.hstack(&col))
}

/// `{x ∈ ℤ^n : A·x ∈ L}` where `L` is the column lattice of `l` (same row count as `A`).
pub fn lattice_preimage(a: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    // kernel of [A | -L] projected onto the first n coordinates
    let n = a.cols();
    let k = integer_kernel(&a.hstack(&l.neg()));
    let proj = Matrix::from_fn(n, k.cols(), |r, c| k[(r, c)].clone());
    if proj.cols() == 0 {
        return int_zeros(n, 0);
    }
    lattice_basis(&proj)
}

/// Intersection of two column lattices in ℤ^m.
pub fn lattice_intersection(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let pre = lattice_preimage(a, b);
    if pre.cols() == 0 {
        return int_zeros(a.rows(), 0);
    }
    lattice_basis(&a.mul(&pre))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_diag_chain(d: &IntMatrix) -> bool {
        let k = d.rows().min(d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r != c && !d[(r, c)].is_zero() {
                    return false;
                }
            }
        }
        (1..k).all(|i| {
            let a = &d[(i - 1, i - 1)];
            let b = &d[(i, i)];
            if a.is_zero() {
                b.is_zero()
            } else {
                b.is_multiple_of(a)
            }
        })
    }

    #[test]
    fn snf_examples() {
        let (u, d, v) = smith_normal_form(&int_identity(2));
        assert_eq!(d, int_identity(2));
        assert_eq!(u.mul(&int_identity(2)).mul(&v), d);

        let a = int_matrix(&[vec![2, 0], vec![0, 3]]);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, int_matrix(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(u.mul(&a).mul(&v), d);
        assert_eq!(det_bareiss(&u).abs(), BigInt::one());
        assert_eq!(det_bareiss(&v).abs(), BigInt::one());

        let z = int_matrix(&[vec![2, 0], vec![0, 0]]);
        let (_, d, _) = smith_normal_form(&z);
        assert_eq!(d, z);
    }

    #[test]
    fn snf_rectangular() {
        let a = int_matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 1, 1]]);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(u.mul(&a).mul(&v), d);
        assert!(is_diag_chain(&d));
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&int_identity(2));
        assert_eq!(h, int_identity(2));
        assert_eq!(u, int_identity(2));

        let a = int_matrix(&[vec![4, 2], vec![0, 2]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(a.mul(&u), h);

        let gens = int_matrix(&[vec![2, 0, 4], vec![0, 3, 3]]);
        let basis = lattice_basis(&gens);
        assert_eq!(det_bareiss(&basis).abs(), BigInt::from(6));
        assert_eq!(lattice_index(&gens), Some(BigInt::from(6)));
    }

    #[test]
    fn hnf_reduces_off_pivot_entries() {
        let a = int_matrix(&[vec![3, 7], vec![1, 5]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(a.mul(&u), h);
        assert!(h[(1, 0)].is_zero());
        assert!(h[(0, 0)].is_positive() && h[(1, 1)].is_positive());
        assert!(!h[(0, 1)].is_negative() && h[(0, 1)] < h[(0, 0)]);
        assert_eq!(hermite_normal_form(&h).0, h);
    }

    #[test]
    fn kernel_and_preimage() {
        let a = int_matrix(&[vec![1, 2, 3]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero_matrix());

        // {x : 2x ∈ 6ℤ} = 3ℤ
        let pre = lattice_preimage(&int_matrix(&[vec![2]]), &int_matrix(&[vec![6]]));
        assert_eq!(pre, int_matrix(&[vec![3]]));

        let i = lattice_intersection(&int_matrix(&[vec![4]]), &int_matrix(&[vec![6]]));
        assert_eq!(i, int_matrix(&[vec![12]]));
    }

    #[test]
    fn membership() {
        let gens = int_matrix(&[vec![2, 1], vec![1, 2]]);
        assert!(lattice_contains(&gens, &[BigInt::from(1), BigInt::from(-1)]));
        assert!(!lattice_contains(&gens, &[BigInt::from(1), BigInt::from(0)]));
    }
}
