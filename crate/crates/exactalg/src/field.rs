//! A minimal field abstraction shared by the exact coefficient domains used
//! throughout the workspace: finite fields, `BigRational`, and quadratic
//! irrationals.
//!
//! Elements carry their own context (a finite-field element knows its field),
//! so the trait exposes `zero_like`/`one_like` constructors instead of
//! nullary `zero()`/`one()`. Generic containers (`Poly`, `TruncSeries`,
//! `Mat`) always hold at least one element or receive a sample element, from
//! which constants of the right field are derived.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field arithmetic. All operations are pure; values are immutable.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    /// The additive identity of the same field as `self`.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of the same field as `self`.
    fn one_like(&self) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    /// The image of the integer `n` in this field.
    fn from_i64_like(&self, n: i64) -> Self {
        self.from_bigint_like(&BigInt::from(n))
    }

    /// The image of an arbitrary-precision integer in this field.
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        let mut acc = self.zero_like();
        let one = self.one_like();
        let mut base = one.clone();
        let mag = n.abs();
        let (_, bytes) = mag.to_bytes_le();
        for byte in bytes {
            for bit in 0..8 {
                if byte >> bit & 1 == 1 {
                    acc = acc.add(&base);
                }
                base = base.add(&base);
            }
        }
        if n.is_negative() {
            acc.neg()
        } else {
            acc
        }
    }

    /// `self` raised to a non-negative machine-word power.
    fn pow_u(&self, e: u64) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// `self` raised to an arbitrary-precision non-negative power.
    fn pow_big(&self, e: &num_bigint::BigUint) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base);
            }
            base = base.mul(&base);
        }
        result
    }
}

/// Extra structure available on finite-field elements, needed by polynomial
/// factorization.
pub trait FiniteField: Field + Eq + Ord + std::hash::Hash {
    fn char_p(&self) -> u64;
    fn ext_degree(&self) -> usize;
    fn field_size(&self) -> num_bigint::BigUint;
    /// The q-power Frobenius of the prime field, x ↦ x^p.
    fn frob(&self) -> Self;
    fn sample_like(&self, rng: &mut dyn rand::RngCore) -> Self;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Convenience constructor for a `BigRational` from machine integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integer `BigRational`.
pub fn rat_int(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field_ops() {
        let half = rat(1, 2);
        let third = rat(1, 3);
        assert_eq!(half.add(&third), rat(5, 6));
        assert_eq!(half.mul(&third), rat(1, 6));
        assert_eq!(half.inv().unwrap(), rat_int(2));
        assert!(rat_int(0).inv().is_none());
        assert_eq!(half.pow_u(3), rat(1, 8));
        assert_eq!(half.from_i64_like(-7), rat_int(-7));
    }

    #[test]
    fn from_bigint_large() {
        let q = rat_int(1);
        let n = BigInt::parse_bytes(b"123456789123456789", 10).unwrap();
        assert_eq!(q.from_bigint_like(&n), BigRational::from_integer(n));
    }
}
