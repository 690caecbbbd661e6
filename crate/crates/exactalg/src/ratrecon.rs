//! Chinese remaindering and rational reconstruction: the bridge from
//! modular computations at several primes back to exact rational values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Combines x ≡ r1 (mod m1) and x ≡ r2 (mod m2) for coprime moduli,
/// returning (r, m1·m2) with 0 ≤ r < m1·m2.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = m1.gcd(m2);
    if !g.is_one() {
        // Allow compatible congruences with non-coprime moduli.
        if (r1 - r2).mod_floor(&g) != BigInt::zero() {
            return None;
        }
        let l = m1.lcm(m2);
        // Solve via the coprime parts.
        let m1p = m1 / &g;
        let inv = mod_inverse(&m1p.mod_floor(&(m2 / &g)), &(m2 / &g))?;
        let t = ((r2 - r1) / &g * inv).mod_floor(&(m2 / &g));
        let x = (r1 + m1 * t).mod_floor(&l);
        return Some((x, l));
    }
    let m = m1 * m2;
    let inv = mod_inverse(&m1.mod_floor(m2), m2)?;
    let t = ((r2 - r1) * inv).mod_floor(m2);
    let x = (r1 + m1 * t).mod_floor(&m);
    Some((x, m))
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction: finds a/b with a ≡ r·b (mod m), |a| ≤ N,
/// 0 < b ≤ N for N = ⌊√(m/2)⌋, if such a fraction exists (it is then
/// unique). Returns None when r encodes no small rational.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    // Verify: gcd condition ensures a ≡ r b (mod m) with b invertible.
    if !t1.gcd(m).is_one() {
        return None;
    }
    let (a, b) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn crt_basic() {
        let (r, m) = crt_pair(&bi(2), &bi(3), &bi(3), &bi(5)).unwrap();
        assert_eq!(m, bi(15));
        assert_eq!(r, bi(8));
        // Non-coprime compatible: x ≡ 2 mod 4, x ≡ 0 mod 6 → x ≡ 6 mod 12.
        let (r, m) = crt_pair(&bi(2), &bi(4), &bi(0), &bi(6)).unwrap();
        assert_eq!(m, bi(12));
        assert_eq!(r, bi(6));
        // Incompatible.
        assert!(crt_pair(&bi(1), &bi(4), &bi(0), &bi(6)).is_none());
    }

    #[test]
    fn reconstruct_small_fractions() {
        // 1/3 mod 10007: r = inverse of 3 times 1.
        let m = bi(10007);
        let r = mod_inverse(&bi(3), &m).unwrap();
        let f = rational_reconstruct(&r, &m).unwrap();
        assert_eq!(f, BigRational::new(bi(1), bi(3)));
        // -5/7 mod 10007.
        let r = (bi(-5) * mod_inverse(&bi(7), &m).unwrap()).mod_floor(&m);
        let f = rational_reconstruct(&r, &m).unwrap();
        assert_eq!(f, BigRational::new(bi(-5), bi(7)));
        // Integers come back as integers.
        let f = rational_reconstruct(&bi(17), &m).unwrap();
        assert_eq!(f, BigRational::from_integer(bi(17)));
    }

    #[test]
    fn reconstruct_after_crt() {
        // Reconstruct 22/7 from residues mod 101 and 103.
        let val = BigRational::new(bi(22), bi(7));
        let residue = |p: i64| {
            (val.numer() * mod_inverse(&val.denom().mod_floor(&bi(p)), &bi(p)).unwrap())
                .mod_floor(&bi(p))
        };
        let (r, m) = crt_pair(&residue(101), &bi(101), &residue(103), &bi(103)).unwrap();
        assert_eq!(rational_reconstruct(&r, &m).unwrap(), val);
    }
}
