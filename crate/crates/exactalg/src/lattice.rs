//! Sublattices of Z^n represented by Hermite-normal-form row bases, with
//! membership, canonical vector reduction, sum, intersection, and index
//! computations.

use crate::intmat::{
    abs_det, hnf, imat_from_i64, left_kernel, row_is_zero, row_vec_mul, solve_left, IMat,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    n: usize,
    /// HNF basis rows (may be fewer than n for lower-rank lattices).
    basis: IMat,
    /// Pivot column of each basis row.
    pivots: Vec<usize>,
}

impl IntLattice {
    /// Lattice generated by the given row vectors in Z^n.
    pub fn from_rows(n: usize, rows: &IMat) -> Self {
        assert!(rows.iter().all(|r| r.len() == n), "row length must be {n}");
        let basis = hnf(rows);
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        IntLattice { n, basis, pivots }
    }

    pub fn from_rows_i64(n: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(n, &imat_from_i64(rows))
    }

    /// The full lattice Z^n.
    pub fn full(n: usize) -> Self {
        Self::from_rows(n, &crate::intmat::identity(n))
    }

    /// The zero lattice in Z^n.
    pub fn zero(n: usize) -> Self {
        IntLattice {
            n,
            basis: vec![],
            pivots: vec![],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IMat {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(self.pivots.iter()) {
            if v[pc].is_zero() {
                continue;
            }
            let (q, r) = v[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return false;
            }
            for (vj, bj) in v.iter_mut().zip(row.iter()) {
                *vj -= &q * bj;
            }
        }
        row_is_zero(&v)
    }

    /// Canonical representative of v modulo the lattice: each pivot
    /// coordinate is reduced into [0, pivot) working down the HNF rows.
    /// Vectors in the same coset reduce to the same representative.
    pub fn reduce_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(self.pivots.iter()) {
            let q = v[pc].div_floor(&row[pc]);
            if !q.is_zero() {
                for (vj, bj) in v.iter_mut().zip(row.iter()) {
                    *vj -= &q * bj;
                }
            }
        }
        v
    }

    /// Lattice sum L + M.
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_rows(self.n, &rows)
    }

    /// Lattice intersection L ∩ M, via the left kernel of the stacked basis.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        if self.basis.is_empty() || other.basis.is_empty() {
            return Self::zero(self.n);
        }
        // x = a·L = b·M ⟺ (a, b) in the left kernel of [L; −M].
        let mut stacked: IMat = self.basis.clone();
        for row in &other.basis {
            stacked.push(row.iter().map(|x| -x.clone()).collect());
        }
        let kern = left_kernel(&stacked);
        let rows: IMat = kern
            .iter()
            .map(|ab| row_vec_mul(&ab[..self.basis.len()], &self.basis))
            .collect();
        Self::from_rows(self.n, &rows)
    }

    /// Solves a·basis = v exactly, returning the coefficient vector.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_left(&self.basis, v)
    }

    /// Index [other : self] for self ⊆ other of equal rank; panics if the
    /// containment fails.
    pub fn index_in(&self, other: &Self) -> BigUint {
        assert_eq!(self.n, other.n);
        assert_eq!(self.rank(), other.rank(), "index requires equal rank");
        let coords: IMat = self
            .basis
            .iter()
            .map(|row| {
                other
                    .coordinates(row)
                    .expect("lattice is not contained in the claimed superlattice")
            })
            .collect();
        let det = abs_det(&coords);
        assert!(!det.is_zero());
        det.magnitude().clone()
    }

    /// Enumerates all canonical coset representatives of Z^n modulo the
    /// lattice; requires full rank (finite quotient).
    pub fn coset_representatives(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_full_rank(), "quotient must be finite");
        let mut reps: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); self.n]];
        for i in 0..self.n {
            let pivot: BigInt = self.basis[i][i].clone();
            let bound: u64 = (&pivot).try_into().expect("pivot fits u64");
            let mut next = Vec::with_capacity(reps.len() * bound as usize);
            for rep in reps {
                for k in 0..bound {
                    let mut r = rep.clone();
                    r[i] += BigInt::from(k);
                    next.push(r);
                }
            }
            reps = next;
        }
        reps.into_iter().map(|v| self.reduce_vec(&v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn membership_and_reduction() {
        let l = IntLattice::from_rows_i64(2, &[vec![2, 0], vec![0, 3]]);
        assert!(l.contains(&[bi(4), bi(-3)]));
        assert!(!l.contains(&[bi(1), bi(0)]));
        assert_eq!(l.reduce_vec(&[bi(5), bi(7)]), vec![bi(1), bi(1)]);
        assert_eq!(l.reduce_vec(&[bi(-1), bi(-2)]), vec![bi(1), bi(1)]);
    }

    #[test]
    fn intersection_of_scaled_lattices() {
        let a = IntLattice::from_rows_i64(1, &[vec![2]]);
        let b = IntLattice::from_rows_i64(1, &[vec![3]]);
        let c = a.intersect(&b);
        assert_eq!(c.basis(), &imat_from_i64(&[vec![6]]));
        // In Z²: (2Z × Z) ∩ (Z × 3Z) = 2Z × 3Z.
        let a2 = IntLattice::from_rows_i64(2, &[vec![2, 0], vec![0, 1]]);
        let b2 = IntLattice::from_rows_i64(2, &[vec![1, 0], vec![0, 3]]);
        let c2 = a2.intersect(&b2);
        assert_eq!(c2.basis(), &imat_from_i64(&[vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn index_and_cosets() {
        let l = IntLattice::from_rows_i64(2, &[vec![2, 1], vec![0, 3]]);
        let full = IntLattice::full(2);
        assert_eq!(l.index_in(&full), BigUint::from(6u32));
        let reps = l.coset_representatives();
        assert_eq!(reps.len(), 6);
        // All reps distinct and reduced.
        let set: std::collections::HashSet<Vec<BigInt>> = reps.iter().cloned().collect();
        assert_eq!(set.len(), 6);
        for r in &reps {
            assert_eq!(&l.reduce_vec(r), r);
        }
    }

    #[test]
    fn sum_and_intersect_are_dual_on_indices() {
        // [Z² : A∩B] · 1 = [Z² : A][Z² : B] when A + B = Z².
        let a = IntLattice::from_rows_i64(2, &[vec![2, 0], vec![0, 1]]);
        let b = IntLattice::from_rows_i64(2, &[vec![1, 1], vec![0, 5]]);
        let sum = a.sum(&b);
        let inter = a.intersect(&b);
        let full = IntLattice::full(2);
        assert_eq!(sum.basis(), full.basis());
        assert_eq!(
            a.index_in(&full) * b.index_in(&full),
            inter.index_in(&full)
        );
    }

    #[test]
    fn lower_rank_lattice() {
        let l = IntLattice::from_rows_i64(2, &[vec![0, 0]]);
        assert_eq!(l.rank(), 0);
        let m = IntLattice::from_rows_i64(2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        assert!(m.contains(&[bi(3), bi(6)]));
        assert!(!m.contains(&[bi(1), bi(1)]));
    }
}
