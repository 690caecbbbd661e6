//! Affine point arithmetic on a long Weierstrass curve over any exact
//! field. Used to verify marked-point claims on elliptic quotient curves
//! (membership and exact torsion orders) and reused mod p by the group
//! computations downstream.

use exactalg::Field;

/// An affine point or the point at infinity.
pub type EcPoint<F> = Option<(F, F)>;

/// y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆ with coefficients [a₁, a₂, a₃, a₄, a₆].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weierstrass<F: Field> {
    pub a: [F; 5],
}

impl<F: Field> Weierstrass<F> {
    pub fn new(a: [F; 5]) -> Self {
        Weierstrass { a }
    }

    /// Whether the affine pair satisfies the curve equation.
    pub fn contains(&self, x: &F, y: &F) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = y.mul(y).add(&a1.mul(x).mul(y)).add(&a3.mul(y));
        let x2 = x.mul(x);
        let rhs = x2.mul(x).add(&a2.mul(&x2)).add(&a4.mul(x)).add(a6);
        lhs == rhs
    }

    pub fn on_curve(&self, p: &EcPoint<F>) -> bool {
        match p {
            None => true,
            Some((x, y)) => self.contains(x, y),
        }
    }

    pub fn neg(&self, p: &EcPoint<F>) -> EcPoint<F> {
        let [a1, _, a3, _, _] = &self.a;
        p.as_ref()
            .map(|(x, y)| (x.clone(), y.neg().sub(&a1.mul(x)).sub(a3)))
    }

    /// Group addition by the chord-tangent formulas of the long Weierstrass
    /// form, valid in every characteristic.
    pub fn add(&self, p: &EcPoint<F>, q: &EcPoint<F>) -> EcPoint<F> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let (x1, y1) = match p {
            None => return q.clone(),
            Some(v) => v,
        };
        let (x2, y2) = match q {
            None => return p.clone(),
            Some(v) => v,
        };
        let (lambda, nu) = if x1 != x2 {
            let dx = x2.sub(x1);
            let inv = dx.inv().expect("nonzero");
            let lambda = y2.sub(y1).mul(&inv);
            let nu = y1.mul(x2).sub(&y2.mul(x1)).mul(&inv);
            (lambda, nu)
        } else {
            // Same x: either inverse points or a tangent doubling.
            let minus_y1 = y1.neg().sub(&a1.mul(x1)).sub(a3);
            if *y2 == minus_y1 {
                return None;
            }
            let den = y1.add(y1).add(&a1.mul(x1)).add(a3);
            let inv = den.inv().expect("not two-torsion here");
            let x1sq = x1.mul(x1);
            let three = x1.from_i64_like(3);
            let two = x1.from_i64_like(2);
            let lambda = three
                .mul(&x1sq)
                .add(&two.mul(a2).mul(x1))
                .add(a4)
                .sub(&a1.mul(y1))
                .mul(&inv);
            let nu = x1sq
                .mul(x1)
                .neg()
                .add(&a4.mul(x1))
                .add(&two.mul(a6))
                .sub(&a3.mul(y1))
                .mul(&inv);
            (lambda, nu)
        };
        let x3 = lambda
            .mul(&lambda)
            .add(&a1.mul(&lambda))
            .sub(a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda.add(a1).mul(&x3).neg().sub(&nu).sub(a3);
        Some((x3, y3))
    }

    /// n·P by double-and-add; negative n goes through the inverse.
    pub fn mul_i64(&self, n: i64, p: &EcPoint<F>) -> EcPoint<F> {
        if n == 0 {
            return None;
        }
        let (mut k, base) = if n < 0 {
            (n.unsigned_abs(), self.neg(p))
        } else {
            (n as u64, p.clone())
        };
        let mut acc: EcPoint<F> = None;
        let mut run = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &run);
            }
            run = self.add(&run, &run);
            k >>= 1;
        }
        acc
    }

    /// Whether `p` has exact order `n` (n·P = O and (n/q)·P ≠ O for primes q | n).
    pub fn has_exact_order(&self, p: &EcPoint<F>, n: u64) -> bool {
        assert!(n >= 1);
        if self.mul_i64(n as i64, p).is_some() {
            return false;
        }
        let mut m = n;
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                if self.mul_i64((n / q) as i64, p).is_none() {
                    return false;
                }
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 && self.mul_i64((n / m) as i64, p).is_none() {
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{field_make, rat_int, FFElem};
    use num_rational::BigRational;

    fn curve_q(a: [i64; 5]) -> Weierstrass<BigRational> {
        Weierstrass::new(a.map(rat_int))
    }

    #[test]
    fn three_torsion_on_a_rank_zero_curve() {
        // On y² + y = x³ + x² - 23x - 50 the point (8, 18) has exact order 3.
        let e = curve_q([0, 1, 1, -23, -50]);
        let p: EcPoint<BigRational> = Some((rat_int(8), rat_int(18)));
        assert!(e.on_curve(&p));
        assert!(e.has_exact_order(&p, 3));
        assert!(!e.has_exact_order(&p, 6));
    }

    #[test]
    fn doubling_and_inverse_are_consistent() {
        // y² + y = x³ - x, generator (0, 0).
        let e = curve_q([0, 0, 1, -1, 0]);
        let p: EcPoint<BigRational> = Some((rat_int(0), rat_int(0)));
        assert!(e.on_curve(&p));
        let two_p = e.add(&p, &p);
        assert!(e.on_curve(&two_p));
        let minus_p = e.neg(&p);
        assert_eq!(e.add(&two_p, &minus_p), p);
        assert_eq!(e.add(&p, &minus_p), None);
        // Non-torsion: small multiples stay affine and distinct.
        let mut seen = vec![p.clone()];
        for n in 2..=8 {
            let q = e.mul_i64(n, &p);
            assert!(q.is_some());
            assert!(!seen.contains(&q));
            seen.push(q);
        }
    }

    #[test]
    fn group_order_over_a_small_prime_field() {
        // y² = x³ + x over F_5 has 4 points: O, (0,0), (2,0), (3,0).
        let ctx = field_make(5, 1).unwrap();
        let lift = |n: u64| FFElem::from_u64(&ctx, n);
        let e = Weierstrass::new([lift(0), lift(0), lift(0), lift(1), lift(0)]);
        let mut count = 1u64;
        for x in 0..5 {
            for y in 0..5 {
                if e.contains(&lift(x), &lift(y)) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 4);
        for x in 0..5 {
            for y in 0..5 {
                let p = Some((lift(x), lift(y)));
                if e.on_curve(&p) {
                    assert_eq!(e.mul_i64(4, &p), None);
                }
            }
        }
    }
}
