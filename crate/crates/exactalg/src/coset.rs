//! Finite unions of cosets of a common sublattice of Z^n: the running state
//! of the coset sieve. Offsets are kept as canonical representatives modulo
//! the lattice, sorted and deduplicated, so equality and membership are
//! decidable and the union is empty exactly when the offset list is.

use crate::intmat::{solve_left, IMat};
use crate::lattice::IntLattice;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetUnion {
    lat: IntLattice,
    offsets: Vec<Vec<BigInt>>,
}

impl CosetUnion {
    pub fn new(lat: IntLattice, offsets: Vec<Vec<BigInt>>) -> Self {
        let n = lat.ambient_dim();
        let mut canon: Vec<Vec<BigInt>> = offsets
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), n, "offset dimension mismatch"))
            .map(|v| lat.reduce_vec(&v))
            .collect();
        canon.sort();
        canon.dedup();
        CosetUnion {
            lat,
            offsets: canon,
        }
    }

    pub fn from_i64(lat: IntLattice, offsets: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigInt>> = offsets
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::new(lat, rows)
    }

    /// The whole of Z^n as a single coset.
    pub fn all_of_zn(n: usize) -> Self {
        Self::new(IntLattice::full(n), vec![vec![BigInt::from(0); n]])
    }

    pub fn empty(n: usize) -> Self {
        Self::new(IntLattice::full(n), vec![])
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lat
    }

    pub fn offsets(&self) -> &[Vec<BigInt>] {
        &self.offsets
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn num_cosets(&self) -> usize {
        self.offsets.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let r = self.lat.reduce_vec(v);
        self.offsets.binary_search(&r).is_ok()
    }

    /// Intersection of two coset unions over the same Z^n. The result's
    /// lattice is the intersection of the two lattices; a pair of cosets
    /// u + L, v + M meets iff v − u ∈ L + M, and then meets in a single
    /// coset of L ∩ M found from an explicit decomposition of v − u.
    pub fn intersect(&self, other: &Self) -> Self {
        let n = self.lat.ambient_dim();
        assert_eq!(n, other.lat.ambient_dim(), "ambient dimension mismatch");
        let meet = self.lat.intersect(&other.lat);
        let mut stacked: IMat = self.lat.basis().clone();
        stacked.extend(other.lat.basis().iter().cloned());
        let rank_l = self.lat.basis().len();
        let mut offsets = vec![];
        for u in &self.offsets {
            for v in &other.offsets {
                let diff: Vec<BigInt> = v.iter().zip(u.iter()).map(|(a, b)| a - b).collect();
                // Decompose diff = a·L + b·M if possible.
                let Some(coeffs) = solve_left(&stacked, &diff) else {
                    continue;
                };
                // w = u + a·L lies in both cosets.
                let mut w = u.clone();
                for (ai, lrow) in coeffs[..rank_l].iter().zip(self.lat.basis().iter()) {
                    for (wj, lj) in w.iter_mut().zip(lrow.iter()) {
                        *wj += ai * lj;
                    }
                }
                offsets.push(w);
            }
        }
        Self::new(meet, offsets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat1(k: i64) -> IntLattice {
        IntLattice::from_rows_i64(1, &[vec![k]])
    }

    #[test]
    fn crt_with_zero_offsets() {
        // (2Z, 0) ∩ (3Z, 0) = (6Z, 0)
        let a = CosetUnion::from_i64(lat1(2), &[vec![0]]);
        let b = CosetUnion::from_i64(lat1(3), &[vec![0]]);
        let c = a.intersect(&b);
        assert_eq!(c.lattice().basis(), lat1(6).basis());
        assert_eq!(c.num_cosets(), 1);
        assert!(c.contains(&[BigInt::from(6)]));
        assert!(!c.contains(&[BigInt::from(3)]));
    }

    #[test]
    fn parity_obstruction() {
        // (2Z, 1) ∩ (4Z, 0) = ∅: elements of the first are odd, of the second even.
        let a = CosetUnion::from_i64(lat1(2), &[vec![1]]);
        let b = CosetUnion::from_i64(lat1(4), &[vec![0]]);
        let c = a.intersect(&b);
        assert!(c.is_empty());
        // Exhaustive confirmation mod 4: odd values never ≡ 0 mod 4.
        for x in -8..8 {
            let in_a = (x - 1) % 2 == 0;
            let in_b = x % 4 == 0;
            assert!(!(in_a && in_b));
        }
    }

    #[test]
    fn identity_element() {
        let x = CosetUnion::from_i64(
            IntLattice::from_rows_i64(2, &[vec![2, 1], vec![0, 3]]),
            &[vec![0, 0], vec![1, 1]],
        );
        let full = CosetUnion::all_of_zn(2);
        assert_eq!(x.intersect(&full), x);
        assert_eq!(full.intersect(&x), x);
    }

    #[test]
    fn offsets_are_canonical_and_deduped() {
        let l = lat1(5);
        let u = CosetUnion::from_i64(l, &[vec![7], vec![2], vec![-3], vec![12]]);
        assert_eq!(u.num_cosets(), 1);
        assert_eq!(u.offsets()[0], vec![BigInt::from(2)]);
    }

    #[test]
    fn partial_overlap() {
        // (2Z, {0, 1}) ∩ (4Z, {0}) = (4Z, {0})
        let a = CosetUnion::from_i64(lat1(2), &[vec![0], vec![1]]);
        let b = CosetUnion::from_i64(lat1(4), &[vec![0]]);
        let c = a.intersect(&b);
        assert_eq!(c.num_cosets(), 1);
        assert_eq!(c.lattice().basis(), lat1(4).basis());
        assert!(c.contains(&[BigInt::from(8)]));
        assert!(!c.contains(&[BigInt::from(2)]));
    }
}
