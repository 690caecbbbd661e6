//! Quadratic irrationals a + bθ with θ² = d, d a squarefree integer (or 0
//! for plain rationals). These are the coordinate domain of quadratic
//! points: a value carries its own discriminant, conjugation flips the sign
//! of b, and reduction modulo p lands in F_p or F_{p²} depending on whether
//! d is a square modulo p.

use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldDesc};
use crate::field::Field;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Splits n = s²·m with m squarefree; returns (s, m). Sign stays on m.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut f = BigInt::from(2);
    loop {
        let f2 = &f * &f;
        if f2.magnitude() > m.magnitude() {
            break;
        }
        while (&m % &f2).is_zero() {
            m /= &f2;
            s *= &f;
        }
        f += 1;
    }
    (s, m)
}

impl QuadIrr {
    /// a + bθ with θ² = d. The discriminant is normalized squarefree
    /// (square factors are absorbed into b); b = 0 normalizes d to 0.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if Zero::is_zero(&b) || d.is_zero() {
            return QuadIrr {
                a,
                b: BigRational::zero(),
                d: BigInt::zero(),
            };
        }
        let (s, m) = squarefree_split(&d);
        if m.is_one() {
            // θ is the integer s: the value is rational.
            return QuadIrr {
                a: a + b * BigRational::from_integer(s),
                b: BigRational::zero(),
                d: BigInt::zero(),
            };
        }
        QuadIrr {
            a,
            b: b * BigRational::from_integer(s),
            d: m,
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadIrr {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }
    pub fn b(&self) -> &BigRational {
        &self.b
    }
    pub fn disc(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn conj(&self) -> Self {
        QuadIrr {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    fn merged_d(&self, rhs: &Self) -> Result<BigInt> {
        if self.d.is_zero() {
            Ok(rhs.d.clone())
        } else if rhs.d.is_zero() || self.d == rhs.d {
            Ok(self.d.clone())
        } else {
            Err(Error::FieldMismatch(
                format!("Q(sqrt {})", self.d),
                format!("Q(sqrt {})", rhs.d),
            ))
        }
    }

    /// Reduces modulo p into the given finite field. Requires denominators
    /// invertible mod p and, when d is a non-square mod p, a quadratic
    /// extension as target. θ maps to the canonical (lexicographically
    /// smallest) root of x² − d in the target field.
    pub fn reduce(&self, ctx: &Arc<FieldDesc>) -> Result<FFElem> {
        let p = ctx.p();
        let to_ff = |r: &BigRational| -> Result<FFElem> {
            let den = FFElem::from_u64(ctx, 0).from_bigint_like(r.denom());
            let num = FFElem::from_u64(ctx, 0).from_bigint_like(r.numer());
            let di = den.inv().ok_or(Error::BadReduction(p))?;
            Ok(num.mul(&di))
        };
        let a = to_ff(&self.a)?;
        if Zero::is_zero(&self.b) {
            return Ok(a);
        }
        let b = to_ff(&self.b)?;
        let dbar = FFElem::from_u64(ctx, 0).from_bigint_like(&self.d);
        let theta = theta_image(&dbar, ctx)?;
        Ok(a.add(&b.mul(&theta)))
    }

    /// Reduction of the conjugate, with the same canonical θ image.
    pub fn reduce_conj(&self, ctx: &Arc<FieldDesc>) -> Result<FFElem> {
        self.conj().reduce(ctx)
    }
}

/// Keeps the invariant that b = 0 forces d = 0.
fn normalized(a: BigRational, b: BigRational, d: BigInt) -> QuadIrr {
    if Zero::is_zero(&b) {
        QuadIrr {
            a,
            b,
            d: BigInt::zero(),
        }
    } else {
        QuadIrr { a, b, d }
    }
}

/// Canonical image of θ (θ² = dbar) in the field, if one exists there.
fn theta_image(dbar: &FFElem, ctx: &Arc<FieldDesc>) -> Result<FFElem> {
    // Roots of x² − d, deterministic choice: Poly::roots sorts.
    let like = FFElem::from_u64(ctx, 0);
    let f = Poly::new(vec![dbar.neg(), like.zero_like(), like.one_like()]);
    let roots = f.roots();
    roots.into_iter().next().ok_or_else(|| {
        Error::NoSquareRoot(format!("{dbar} has no square root in the target field"))
    })
}

impl Field for QuadIrr {
    fn zero_like(&self) -> Self {
        QuadIrr {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    fn one_like(&self) -> Self {
        QuadIrr {
            a: BigRational::one(),
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        let d = self.merged_d(rhs).expect("mixed discriminants");
        normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let d = self.merged_d(rhs).expect("mixed discriminants");
        normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let d = self.merged_d(rhs).expect("mixed discriminants");
        if d.is_zero() {
            return QuadIrr {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
                d,
            };
        }
        let dd = BigRational::from_integer(d.clone());
        normalized(
            &self.a * &rhs.a + &dd * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }

    fn neg(&self) -> Self {
        QuadIrr {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let a = &self.a / &n;
        let b = -(&self.b / &n);
        let d = if Zero::is_zero(&b) {
            BigInt::zero()
        } else {
            self.d.clone()
        };
        Some(QuadIrr { a, b, d })
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        QuadIrr::from_rational(BigRational::from_integer(n.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;
    use crate::field::{rat, rat_int};

    fn qi(a: (i64, i64), b: (i64, i64), d: i64) -> QuadIrr {
        QuadIrr::new(rat(a.0, a.1), rat(b.0, b.1), BigInt::from(d))
    }

    #[test]
    fn normalization() {
        // 1 + 2√12 = 1 + 4√3
        let x = qi((1, 1), (2, 1), 12);
        assert_eq!(x.disc(), &BigInt::from(3));
        assert_eq!(x.b(), &rat_int(4));
        // 3 + 5√9 = 28
        let y = qi((3, 1), (5, 1), 9);
        assert!(y.is_rational());
        assert_eq!(y.a(), &rat_int(18));
        // negative discriminant with square factor: √(-12) = 2√(-3)
        let z = qi((0, 1), (1, 1), -12);
        assert_eq!(z.disc(), &BigInt::from(-3));
        assert_eq!(z.b(), &rat_int(2));
    }

    #[test]
    fn ring_arithmetic_and_conjugation() {
        let x = qi((1, 2), (3, 1), 61);
        let y = qi((2, 1), (-1, 1), 61);
        // Conjugation is a ring involution.
        assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        // Norm is multiplicative.
        assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        // Inverse.
        let xi = x.inv().unwrap();
        assert!(x.mul(&xi).is_one());
    }

    #[test]
    fn mixing_rational_values_is_fine() {
        let x = qi((1, 1), (1, 1), -7);
        let two = QuadIrr::from_i64(2);
        let s = x.add(&two);
        assert_eq!(s.a(), &rat_int(3));
        assert_eq!(s.disc(), &BigInt::from(-7));
    }

    #[test]
    fn reduce_split_and_inert() {
        // d = 2 is a square mod 7 (3² = 2), so reduction lands in F_7.
        let x = qi((1, 1), (1, 1), 2);
        let f7 = field_make(7, 1).unwrap();
        let r = x.reduce(&f7).unwrap();
        let rc = x.reduce_conj(&f7).unwrap();
        // θ ↦ the smaller root 3 (roots are 3 and 4).
        assert_eq!(r, FFElem::from_u64(&f7, 4));
        assert_eq!(rc, FFElem::from_u64(&f7, 5));
        // d = 3 is not a square mod 7; need F_49.
        let y = qi((0, 1), (1, 1), 3);
        assert!(y.reduce(&f7).is_err());
        let f49 = field_make(7, 2).unwrap();
        let t = y.reduce(&f49).unwrap();
        assert_eq!(t.mul(&t), FFElem::from_u64(&f49, 3));
        // Conjugate reduces to the Frobenius image in the inert case.
        assert_eq!(y.reduce_conj(&f49).unwrap(), t.frobenius());
    }

    #[test]
    fn reduce_rejects_bad_denominator() {
        let x = QuadIrr::from_rational(rat(1, 5));
        let f5 = field_make(5, 1).unwrap();
        assert!(x.reduce(&f5).is_err());
    }
}
