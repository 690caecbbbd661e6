//! Randomized invariant checks for the lattice/coset algebra and the
//! truncated-series ring, plus exhaustive cross-validation of coset
//! intersection against direct enumeration inside a bounded box of Z².

use exactalg::{
    field_make, hnf, imat_from_i64, rat_int, snf_diagonal, CosetUnion, FFElem, Field, IntLattice,
    TruncSeries,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_mat_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_idempotent(rows in small_mat_strategy()) {
        let a = imat_from_i64(&rows);
        let h1 = hnf(&a);
        let h2 = hnf(&h1);
        prop_assert_eq!(h1, h2);
    }

    #[test]
    fn snf_diagonal_divides_successively(rows in small_mat_strategy()) {
        let a = imat_from_i64(&rows);
        let d = snf_diagonal(&a);
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }
}

/// Builds a full-rank sublattice of Z² of index ≤ 50 from three parameters.
fn lattice_from(a: u8, b: i8, c: u8) -> IntLattice {
    let a = (a % 7 + 1) as i64;
    let c = (c % 7 + 1) as i64;
    let b = (b % 7) as i64;
    IntLattice::from_rows_i64(2, &[vec![a, b], vec![0, c]])
}

/// Enumerates the points of a coset union inside [-box_r, box_r]².
fn enumerate_points(u: &CosetUnion, box_r: i64) -> std::collections::BTreeSet<(i64, i64)> {
    let mut out = std::collections::BTreeSet::new();
    for x in -box_r..=box_r {
        for y in -box_r..=box_r {
            let v = vec![BigInt::from(x), BigInt::from(y)];
            if u.contains(&v) {
                out.insert((x, y));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coset_intersection_matches_enumeration(
        a1 in 0u8..49, b1 in -49i8..49, c1 in 0u8..49,
        a2 in 0u8..49, b2 in -49i8..49, c2 in 0u8..49,
        o1 in prop::collection::vec((-5i64..=5, -5i64..=5), 0..3),
        o2 in prop::collection::vec((-5i64..=5, -5i64..=5), 0..3),
    ) {
        let l1 = lattice_from(a1, b1, c1);
        let l2 = lattice_from(a2, b2, c2);
        let u1 = CosetUnion::from_i64(l1, &o1.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>());
        let u2 = CosetUnion::from_i64(l2, &o2.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>());
        let both = u1.intersect(&u2);
        let box_r = 30;
        let pts1 = enumerate_points(&u1, box_r);
        let pts2 = enumerate_points(&u2, box_r);
        let ptsb = enumerate_points(&both, box_r);
        let expected: std::collections::BTreeSet<_> =
            pts1.intersection(&pts2).copied().collect();
        prop_assert_eq!(ptsb, expected);
        // Commutativity up to canonical representatives.
        let flipped = u2.intersect(&u1);
        prop_assert_eq!(&both, &flipped);
    }

    #[test]
    fn coset_intersection_associative(
        a1 in 0u8..49, c1 in 0u8..49,
        a2 in 0u8..49, c2 in 0u8..49,
        a3 in 0u8..49, c3 in 0u8..49,
        ox in -4i64..=4, oy in -4i64..=4,
    ) {
        let u1 = CosetUnion::from_i64(lattice_from(a1, 0, c1), &[vec![0, 0], vec![ox, oy]]);
        let u2 = CosetUnion::from_i64(lattice_from(a2, 1, c2), &[vec![1, 0]]);
        let u3 = CosetUnion::from_i64(lattice_from(a3, -1, c3), &[vec![0, 1], vec![ox, -oy]]);
        let left = u1.intersect(&u2).intersect(&u3);
        let right = u1.intersect(&u2.intersect(&u3));
        prop_assert_eq!(left, right);
    }
}

// ---------------------------------------------------------------------------
// TruncSeries ring axioms over F_5 and F_49 at precision 8.
// ---------------------------------------------------------------------------

fn series_from_seeds(p: u64, k: usize, seeds: &[u64]) -> TruncSeries<FFElem> {
    let ctx = field_make(p, k).unwrap();
    let like = FFElem::from_u64(&ctx, 0);
    let coeffs: Vec<FFElem> = seeds
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut c = vec![0u64; k];
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = (s.wrapping_mul(2654435761).wrapping_add((i * k + j) as u64)) % p;
            }
            FFElem::new(&ctx, &c)
        })
        .collect();
    TruncSeries::new(&like, coeffs, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_axioms(
        sa in prop::collection::vec(0u64..1000, 8),
        sb in prop::collection::vec(0u64..1000, 8),
        sc in prop::collection::vec(0u64..1000, 8),
        field_pick in 0u8..2,
    ) {
        let (p, k) = if field_pick == 0 { (5, 1) } else { (7, 2) };
        let a = series_from_seeds(p, k, &sa);
        let b = series_from_seeds(p, k, &sb);
        let c = series_from_seeds(p, k, &sc);
        // Commutativity and associativity.
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Distributivity.
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Units invert exactly when the constant term is nonzero.
        if !a.coeff(0).is_zero() {
            let inv = a.invert().unwrap();
            let ctx = field_make(p, k).unwrap();
            let like = FFElem::from_u64(&ctx, 0);
            prop_assert_eq!(a.mul(&inv), TruncSeries::one(&like, 8));
        } else {
            prop_assert!(a.invert().is_err());
        }
        // Leibniz rule: (ab)' = a'b + ab'.
        let lhs = a.mul(&b).derive();
        let rhs = a.derive().mul(&b.truncate(7)).add(&a.truncate(7).mul(&b.derive()));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn series_precision_bookkeeping() {
    let like = rat_int(0);
    let a = TruncSeries::new(&like, vec![rat_int(1); 8], 8);
    let b = TruncSeries::new(&like, vec![rat_int(1); 5], 5);
    assert_eq!(a.mul(&b).prec(), 5);
    assert_eq!(a.add(&b).prec(), 5);
    assert_eq!(a.derive().prec(), 7);
}
