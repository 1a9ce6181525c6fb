//! Dense matrices over GF(2^w): products, rank, determinant, inverse.
//!
//! Everything is plain Gaussian elimination. Two characteristic-2 facts keep
//! it simple: subtraction is XOR, and row swaps do not flip the determinant
//! sign (the sign is -1 = 1). Matrices do not own a field; each operation
//! takes the [`FieldSpec`] explicitly, so one matrix can be reinterpreted
//! under different moduli in tests without copying.

use alloc::vec::Vec;

use crate::gf2w::{FieldElem, FieldSpec};

/// A dense row-major matrix with entries in GF(2^w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    /// The `rows x cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        let mut data = Vec::with_capacity(height * width);
        for row in rows {
            data.extend_from_slice(row);
        }
        Matrix { rows: height, cols: width, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    /// Overwrites the entry at `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, value: FieldElem) {
        self.data[r * self.cols + c] = value;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix, field: &FieldSpec) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for inner in 0..self.cols {
                let a = self.get(r, inner);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = field.mul(a, other.get(inner, c));
                    out.set(r, c, out.get(r, c) ^ prod);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[FieldElem], field: &FieldSpec) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|r| {
                let mut acc = 0;
                for (c, &x) in v.iter().enumerate() {
                    acc ^= field.mul(self.get(r, c), x);
                }
                acc
            })
            .collect()
    }

    /// XOR of two equal-shaped matrices (addition in characteristic 2).
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes differ");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Rank by forward elimination.
    pub fn rank(&self, field: &FieldSpec) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let Some(pivot) = (rank..work.rows).find(|&r| work.get(r, col) != 0) else {
                continue;
            };
            work.swap_rows(rank, pivot);
            let inv = field.inv(work.get(rank, col)).expect("pivot is nonzero");
            for r in (rank + 1)..work.rows {
                let factor = field.mul(work.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..work.cols {
                    let delta = field.mul(factor, work.get(rank, c));
                    work.set(r, c, work.get(r, c) ^ delta);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix by elimination. Row swaps need no sign
    /// bookkeeping in characteristic 2.
    pub fn determinant(&self, field: &FieldSpec) -> FieldElem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut det: FieldElem = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| work.get(r, col) != 0) else {
                return 0;
            };
            work.swap_rows(col, pivot);
            let lead = work.get(col, col);
            det = field.mul(det, lead);
            let inv = field.inv(lead).expect("pivot is nonzero");
            for r in (col + 1)..n {
                let factor = field.mul(work.get(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let delta = field.mul(factor, work.get(col, c));
                    work.set(r, c, work.get(r, c) ^ delta);
                }
            }
        }
        det
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination on an augmented
    /// identity, or `None` when singular.
    pub fn invert(&self, field: &FieldSpec) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut out = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| work.get(r, col) != 0)?;
            work.swap_rows(col, pivot);
            out.swap_rows(col, pivot);
            let inv = field.inv(work.get(col, col)).expect("pivot is nonzero");
            for c in 0..n {
                work.set(col, c, field.mul(work.get(col, c), inv));
                out.set(col, c, field.mul(out.get(col, c), inv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let w = field.mul(factor, work.get(col, c));
                    work.set(r, c, work.get(r, c) ^ w);
                    let o = field.mul(factor, out.get(col, c));
                    out.set(r, c, out.get(r, c) ^ o);
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    /// Determinant oracle for 3x3 matrices: in characteristic 2 the signed
    /// permutation expansion loses its signs, so the determinant is the XOR
    /// over all six permutation products. Shares nothing with elimination.
    fn reference_det_3x3(m: &Matrix, field: &FieldSpec) -> FieldElem {
        let perms = [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut acc = 0;
        for p in perms {
            let mut term: FieldElem = 1;
            for (r, &c) in p.iter().enumerate() {
                term = field.mul(term, m.get(r, c));
            }
            acc ^= term;
        }
        acc
    }

    #[test]
    fn identity_behaves_like_one() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let id = Matrix::identity(3);
        let a = Matrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(id.mul(&a, &f), a);
        assert_eq!(a.mul(&id, &f), a);
        assert_eq!(id.determinant(&f), 1);
        assert_eq!(id.invert(&f).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn two_by_two_determinant_by_hand() {
        // det [[1,2],[3,4]] over GF(8) = 1*4 + 2*3 = 4 XOR 6 = 2.
        let f = FieldSpec::new(3, 0xB).unwrap();
        let a = Matrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.determinant(&f), 2);
    }

    #[test]
    fn singular_matrices_report_zero_det_and_no_inverse() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        // Second row is 3 times the first: 3*[1,2] = [3, 6].
        let a = Matrix::from_rows(&[vec![1, 2], vec![3, 6]]);
        assert_eq!(a.determinant(&f), 0);
        assert_eq!(a.rank(&f), 1);
        assert!(a.invert(&f).is_none());
    }

    #[test]
    fn rank_of_rectangular_matrices() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let a = Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(a.rank(&f), 2);
        // Row 2 = 2 * row 1 and row 3 = 3 * row 1 (GF(16): 3*3 = 5).
        let b = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 5]]);
        assert_eq!(b.rank(&f), 1);
        // Breaking the last entry of row 3 restores independence from row 1.
        let c = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 4]]);
        assert_eq!(c.rank(&f), 2);
        assert_eq!(Matrix::zero(3, 5).rank(&f), 0);
    }

    #[test]
    fn mul_vec_matches_mul_against_a_column() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let a = Matrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let v = [7, 8, 9];
        let as_col = Matrix::from_rows(&[vec![7], vec![8], vec![9]]);
        let prod = a.mul(&as_col, &f);
        assert_eq!(a.mul_vec(&v, &f), vec![prod.get(0, 0), prod.get(1, 0)]);
    }

    fn arb_matrix(n: usize, w: u32) -> impl Strategy<Value = Matrix> {
        let order = 1u16 << w;
        proptest::collection::vec(0..order, n * n).prop_map(move |data| {
            Matrix::from_fn(n, n, |r, c| data[r * n + c])
        })
    }

    proptest! {
        #[test]
        fn elimination_matches_the_permanent_oracle_for_3x3(m in arb_matrix(3, 4)) {
            let f = FieldSpec::with_default_modulus(4).unwrap();
            prop_assert_eq!(m.determinant(&f), reference_det_3x3(&m, &f));
        }

        #[test]
        fn inverse_round_trips_and_det_detects_singularity(m in arb_matrix(4, 4)) {
            let f = FieldSpec::with_default_modulus(4).unwrap();
            let det = m.determinant(&f);
            match m.invert(&f) {
                Some(inv) => {
                    prop_assert_ne!(det, 0);
                    prop_assert_eq!(m.mul(&inv, &f), Matrix::identity(4));
                    prop_assert_eq!(inv.mul(&m, &f), Matrix::identity(4));
                }
                None => prop_assert_eq!(det, 0),
            }
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(3, 4), b in arb_matrix(3, 4)) {
            let f = FieldSpec::with_default_modulus(4).unwrap();
            let ab = a.mul(&b, &f);
            prop_assert_eq!(
                ab.determinant(&f),
                f.mul(a.determinant(&f), b.determinant(&f))
            );
        }

        #[test]
        fn rank_equals_n_exactly_when_invertible(m in arb_matrix(3, 3)) {
            let f = FieldSpec::with_default_modulus(3).unwrap();
            prop_assert_eq!(m.rank(&f) == 3, m.invert(&f).is_some());
        }
    }
}
