use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Serialize, Serializer};

use super::ring::{CommRing, Field};

/// Dense row-major matrix over any coefficient type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: nrows, cols, data }
    }

    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self
    where
        T: Default,
    {
        let cols = columns.len();
        Matrix::from_fn(rows, cols, |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl<T: CommRing> Matrix<T> {
    pub fn zeros_like(rows: usize, cols: usize, sample: &T) -> Self {
        Matrix::filled(rows, cols, sample.zero_like())
    }

    pub fn identity_like(n: usize, sample: &T) -> Self {
        let zero = sample.zero_like();
        let one = sample.one_like();
        Matrix::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        *v == v.one_like()
                    } else {
                        v.is_zero_elem()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let sample = self.data.first().or(rhs.data.first());
        let Some(sample) = sample else {
            return Matrix { rows: self.rows, cols: rhs.cols, data: Vec::new() };
        };
        let zero = sample.zero_like();
        let mut out = Matrix::filled(self.rows, rhs.cols, zero);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero_elem() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero_elem() {
                        let t = a.mul_ref(b);
                        let cell = &mut out[(r, c)];
                        *cell = cell.add_ref(&t);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = v[0].zero_like();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg_ref())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero_elem())
    }

    pub fn trace(&self) -> Option<T> {
        let first = self.data.first()?;
        let mut acc = first.zero_like();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add_ref(&self[(i, i)]);
        }
        Some(acc)
    }

    /// Kronecker product; row index `i·rows(B) + k`, column index `j·cols(B) + l`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let sample = self.data.first().or(rhs.data.first()).expect("kron of empty matrices");
        let mut out = Matrix::filled(self.rows * rhs.rows, self.cols * rhs.cols, sample.zero_like());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero_elem() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero_elem() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let sample = self.data.first().or(rhs.data.first()).expect("direct sum of empty matrices");
        let zero = sample.zero_like();
        Matrix::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self[(r, c)].clone()
            } else if r >= self.rows && c >= self.cols {
                rhs[(r - self.rows, c - self.cols)].clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Division-free determinant by Laplace expansion memoized over column subsets.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n <= 24, "division-free determinant limited to n <= 24");
        let Some(sample) = self.data.first() else {
            panic!("determinant of an empty matrix needs a coefficient context; use det_or")
        };
        let one = sample.one_like();
        let mut memo: HashMap<u32, T> = HashMap::new();
        self.det_rec(0, 0, &one, &mut memo)
    }

    /// Determinant, with `one` returned for the 0×0 matrix.
    pub fn det_or(&self, one: &T) -> T {
        if self.rows == 0 {
            one.clone()
        } else {
            self.det()
        }
    }

    fn det_rec(&self, row: usize, used: u32, one: &T, memo: &mut HashMap<u32, T>) -> T {
        if row == self.rows {
            return one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = one.zero_like();
        let mut sign_pos = true;
        for c in 0..self.cols {
            if used & (1 << c) != 0 {
                continue;
            }
            let a = &self[(row, c)];
            if !a.is_zero_elem() {
                let minor = self.det_rec(row + 1, used | (1 << c), one, memo);
                if !minor.is_zero_elem() {
                    let term = a.mul_ref(&minor);
                    acc = if sign_pos { acc.add_ref(&term) } else { acc.sub_ref(&term) };
                }
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero_elem()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("nonzero pivot is invertible");
            for j in c..m.cols {
                let v = m[(r, j)].mul_ref(&inv);
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero_elem() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero_elem() {
                        continue;
                    }
                    let v = m[(i, j)].sub_ref(&factor.mul_ref(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det_field(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let sample = self.data.first().expect("determinant of an empty matrix").clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = sample.one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero_elem()) else {
                return sample.zero_like();
            };
            if p != c {
                m.swap_rows(p, c);
                det = det.neg_ref();
            }
            let pivot = m[(c, c)].clone();
            det = det.mul_ref(&pivot);
            let inv = pivot.inv().expect("nonzero pivot is invertible");
            for i in c + 1..n {
                if m[(i, c)].is_zero_elem() {
                    continue;
                }
                let factor = m[(i, c)].mul_ref(&inv);
                for j in c..n {
                    let v = m[(i, j)].sub_ref(&factor.mul_ref(&m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Unique solution of a square nonsingular system, or `None`.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert!(self.is_square(), "solve needs a square matrix");
        let n = self.rows;
        let aug = self.hstack(&Matrix::from_fn(n, 1, |r, _| rhs[r].clone()));
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|r| red[(r, n)].clone()).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse needs a square matrix");
        let n = self.rows;
        let sample = self.data.first()?;
        let aug = self.hstack(&Matrix::identity_like(n, sample));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red[(r, n + c)].clone()))
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Some(sample) = self.data.first() else {
            return Vec::new();
        };
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![sample.zero_like(); self.cols];
                v[f] = sample.one_like();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = red[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: fmt::Display> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.data[r * self.cols + c].to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::*;

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    #[test]
    fn division_free_determinant() {
        let a = im(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), BigInt::from(18));
        let b = im(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.det(), BigInt::from(-1));
    }

    #[test]
    fn kron_and_trace() {
        let a = im(&[&[1, 2], &[3, 4]]);
        let b = im(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(1, 2)], BigInt::from(2));
        assert_eq!(k.trace().unwrap(), BigInt::from(0));
    }

    #[test]
    fn rational_solve_and_inverse() {
        let a = im(&[&[2, 1], &[1, 1]]).map(|x| BigRational::from_integer(x.clone()));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let x = a.solve(&[BigRational::from_integer(3.into()), BigRational::from_integer(2.into())]).unwrap();
        assert_eq!(x, vec![BigRational::from_integer(1.into()), BigRational::from_integer(1.into())]);
        assert_eq!(a.det_field(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn nullspace_dimension() {
        let a = im(&[&[1, 2, 3], &[2, 4, 6]]).map(|x| BigRational::from_integer(x.clone()));
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero_elem()));
        }
    }
}
