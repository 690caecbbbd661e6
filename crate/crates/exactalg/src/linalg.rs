//! Dense matrices over an exact field: reduced row echelon form, rank,
//! kernels, and linear solving. Sizes in this workspace stay in the hundreds
//! of rows/columns, so cubic elimination with exact entries is fine.

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(like: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![like.zero_like(); rows * cols],
        }
    }

    pub fn identity(like: &F, n: usize) -> Self {
        let mut m = Self::zeros(like, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = like.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        assert!(!rows.is_empty(), "need at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Mat {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn sample(&self) -> F {
        if let Some(x) = self.data.first() {
            x.zero_like()
        } else {
            panic!("empty matrix has no field sample")
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.sample(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let zero = self.sample();
        let mut out = Self::zeros(&zero, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = a.mul(rhs.at(k, c));
                    let cur = out.at(r, c).add(&add);
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.sample();
                for c in 0..self.cols {
                    acc = acc.add(&self.at(r, c).mul(&v[c]));
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form over the columns `0..active_cols`
    /// (trailing columns are carried along, useful for augmented systems).
    /// Returns the pivot column of each leading row.
    pub fn rref_in_place(&mut self, active_cols: usize) -> Vec<usize> {
        let mut pivots = vec![];
        let mut rank = 0;
        for col in 0..active_cols.min(self.cols) {
            let Some(pr) = (rank..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pr);
            let inv = self.at(rank, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.at(rank, c).mul(&inv);
                *self.at_mut(rank, c) = v;
            }
            for r in 0..self.rows {
                if r != rank && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).sub(&f.mul(self.at(rank, c)));
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place(self.cols).len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let zero = self.sample();
        let one = zero.one_like();
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = vec![];
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of M x = b, if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let zero = self.sample();
        let mut aug = Self::zeros(&zero, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref_in_place(self.cols);
        // Inconsistent iff a row has zero coefficients but nonzero rhs.
        for r in pivots.len()..self.rows {
            if !aug.at(r, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![zero.clone(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_make, FFElem};
    use crate::field::rat_int;

    #[test]
    fn rref_rank_kernel_over_f7() {
        let f7 = field_make(7, 1).unwrap();
        let e = |v: i64| FFElem::from_i64(&f7, v);
        // rows: [1,2,3], [2,4,6] → rank 1, kernel dim 2
        let m = Mat::from_rows(vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
        ]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            let mv = m.mul_vec(v);
            assert!(mv.iter().all(|x| crate::field::Field::is_zero(x)));
        }
    }

    #[test]
    fn solve_over_q() {
        let m = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ]);
        let x = m.solve(&[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        // Inconsistent system.
        let m2 = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ]);
        assert!(m2.solve(&[rat_int(0), rat_int(1)]).is_none());
        assert!(m2.solve(&[rat_int(1), rat_int(2)]).is_some());
    }

    #[test]
    fn identity_and_mul() {
        let i3 = Mat::identity(&rat_int(0), 3);
        let m = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(5)],
            vec![rat_int(2), rat_int(0), rat_int(1)],
        ]);
        assert_eq!(i3.mul(&m), m);
        assert_eq!(m.mul(&i3), m);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_basis().is_empty());
    }
}
