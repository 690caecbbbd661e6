//! Prime and extension finite fields F_{p^k} with deterministic defining
//! polynomials.
//!
//! The defining polynomial of F_{p^k} is the lexicographically first monic
//! irreducible of degree k over F_p, where candidates x^k + c_{k-1}x^{k-1} +
//! … + c_0 are ordered by the base-p integer c_{k-1}…c_1c_0. Fixing this
//! choice makes every reduction and every place coordinate reproducible
//! run-to-run. For example F_25 is F_5[x]/(x² + 2).
//!
//! Elements store an `Arc` to their field descriptor plus a coefficient
//! vector of length k in the power basis of the defining polynomial.

use crate::error::{Error, Result};
use crate::field::Field;
use num_bigint::BigUint;
use smallvec::{smallvec, SmallVec};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Coeffs = SmallVec<[u64; 4]>;

/// Descriptor of a finite field F_{p^k}: characteristic, extension degree,
/// and the monic defining polynomial (coefficients c_0 … c_k with c_k = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDesc {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.k
    }
    /// Coefficients c_0 … c_k of the defining polynomial (c_k = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }
    /// Field size as u64 if it fits.
    pub fn size_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.k {
            acc = acc.checked_mul(self.p)?;
        }
        Some(acc)
    }
}

/// Deterministic Miller–Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // p is prime and a ≠ 0 mod p.
    pow_mod_u64(a, p - 2, p)
}

// ---------------------------------------------------------------------------
// Raw polynomial arithmetic over F_p on coefficient slices (c_0 first).
// Used for field construction and element inversion without going through
// the generic Poly type.
// ---------------------------------------------------------------------------

fn raw_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_u64(ai, bj, p)) % p;
        }
    }
    raw_trim(&mut out);
    out
}

/// Remainder of a modulo b over F_p; b nonzero.
fn raw_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    raw_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_u64(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mul_mod_u64(r[dr], lead_inv, p);
        if c != 0 {
            for j in 0..=db {
                let idx = dr - db + j;
                let sub = mul_mod_u64(c, b[j], p);
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        raw_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn raw_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    raw_trim(&mut a);
    raw_trim(&mut b);
    while !b.is_empty() {
        let r = raw_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod_u64(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod_u64(*c, li, p);
        }
    }
    a
}

/// Extended gcd: returns (g, s) with s·a ≡ g (mod m), g monic.
fn raw_half_xgcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    raw_trim(&mut r0);
    raw_trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // Divide r0 by r1.
        let d1 = r1.len() - 1;
        let lead_inv = inv_mod_u64(r1[d1], p);
        let mut q = vec![0u64; r0.len().saturating_sub(d1)];
        let mut r = r0.clone();
        while r.len() > d1 {
            let dr = r.len() - 1;
            let c = mul_mod_u64(r[dr], lead_inv, p);
            q[dr - d1] = c;
            if c != 0 {
                for j in 0..=d1 {
                    let idx = dr - d1 + j;
                    let sub = mul_mod_u64(c, r1[j], p);
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
            raw_trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        raw_trim(&mut q);
        // s_new = s0 - q*s1
        let qs1 = raw_mul(&q, &s1, p);
        let n = s0.len().max(qs1.len());
        let mut s_new = vec![0u64; n];
        for (i, c) in s_new.iter_mut().enumerate() {
            let x = if i < s0.len() { s0[i] } else { 0 };
            let y = if i < qs1.len() { qs1[i] } else { 0 };
            *c = (x + p - y) % p;
        }
        raw_trim(&mut s_new);
        r0 = std::mem::take(&mut r1);
        r1 = r;
        s0 = std::mem::take(&mut s1);
        s1 = s_new;
    }
    // Normalize gcd monic.
    if let Some(&lead) = r0.last() {
        let li = inv_mod_u64(lead, p);
        for c in r0.iter_mut() {
            *c = mul_mod_u64(*c, li, p);
        }
        for c in s0.iter_mut() {
            *c = mul_mod_u64(*c, li, p);
        }
    }
    (r0, s0)
}

/// x^e mod f over F_p, with e given as (base, exp) meaning base^exp.
fn raw_x_pow_pow(base: u64, exp: u32, f: &[u64], p: u64) -> Vec<u64> {
    // Compute x^(base^exp) mod f by repeated exponentiation by base.
    let mut cur = if f.len() - 1 > 1 { vec![0, 1] } else { raw_rem(&[0, 1], f, p) };
    for _ in 0..exp {
        cur = raw_pow_mod(&cur, base, f, p);
    }
    cur
}

fn raw_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = raw_rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = raw_rem(&raw_mul(&acc, &base, p), f, p);
        }
        base = raw_rem(&raw_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial of degree k ≥ 1 over F_p.
fn raw_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    // x^(p^k) ≡ x mod f
    let xpk = raw_x_pow_pow(p, k as u32, f, p);
    let mut diff = xpk.clone();
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    raw_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k
    let mut rest = k;
    let mut r = 2;
    let mut prime_divs = vec![];
    while r * r <= rest {
        if rest % r == 0 {
            prime_divs.push(r);
            while rest % r == 0 {
                rest /= r;
            }
        }
        r += 1;
    }
    if rest > 1 {
        prime_divs.push(rest);
    }
    for r in prime_divs {
        let mut d = raw_x_pow_pow(p, (k / r) as u32, f, p);
        while d.len() < 2 {
            d.push(0);
        }
        d[1] = (d[1] + p - 1) % p;
        raw_trim(&mut d);
        let g = raw_gcd(&d, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Builds the field F_{p^k} with the deterministic defining polynomial.
pub fn field_make(p: u64, k: usize) -> Result<Arc<FieldDesc>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadDegree);
    }
    if k == 1 {
        return Ok(Arc::new(FieldDesc {
            p,
            k: 1,
            modulus: vec![0, 1],
        }));
    }
    // Enumerate candidates x^k + c_{k-1}x^{k-1} + … + c_0 ordered by the
    // base-p value of (c_{k-1}, …, c_0).
    let total = BigUint::from(p).pow(k as u32);
    let mut counter = BigUint::from(0u32);
    let one = BigUint::from(1u32);
    while counter < total {
        let mut digits = vec![0u64; k];
        let mut v = counter.clone();
        let pp = BigUint::from(p);
        for d in digits.iter_mut() {
            // least significant base-p digit is c_0
            let q = &v / &pp;
            let r = &v - &q * &pp;
            *d = r.try_into().unwrap();
            v = q;
        }
        let mut f = digits.clone();
        f.push(1);
        if raw_is_irreducible(&f, p) {
            return Ok(Arc::new(FieldDesc { p, k, modulus: f }));
        }
        counter += &one;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// An element of a finite field, in the power basis of its descriptor.
#[derive(Debug, Clone)]
pub struct FFElem {
    ctx: Arc<FieldDesc>,
    c: Coeffs,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.c == other.c
    }
}
impl Eq for FFElem {}

impl std::hash::Hash for FFElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.p.hash(state);
        self.ctx.k.hash(state);
        self.c.hash(state);
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on (p, k, c_{k-1}, …, c_0): a deterministic total
/// order used to pick canonical Frobenius-orbit representatives.
impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ctx.p, self.ctx.k)
            .cmp(&(other.ctx.p, other.ctx.k))
            .then_with(|| {
                self.c
                    .iter()
                    .rev()
                    .cmp(other.c.iter().rev())
            })
    }
}

impl std::fmt::Display for FFElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ctx.k == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl FFElem {
    pub fn new(ctx: &Arc<FieldDesc>, coeffs: &[u64]) -> Self {
        let p = ctx.p;
        let mut c: Coeffs = smallvec![0; ctx.k];
        for (i, &v) in coeffs.iter().enumerate() {
            assert!(i < ctx.k, "coefficient vector longer than field degree");
            c[i] = v % p;
        }
        FFElem { ctx: ctx.clone(), c }
    }

    pub fn from_u64(ctx: &Arc<FieldDesc>, v: u64) -> Self {
        Self::new(ctx, &[v % ctx.p])
    }

    pub fn from_i64(ctx: &Arc<FieldDesc>, v: i64) -> Self {
        let p = ctx.p as i64;
        let r = ((v % p) + p) % p;
        Self::from_u64(ctx, r as u64)
    }

    /// The generator x of the power basis (for k = 1, the element 1).
    pub fn gen(ctx: &Arc<FieldDesc>) -> Self {
        if ctx.k == 1 {
            Self::from_u64(ctx, 1)
        } else {
            let mut c: Coeffs = smallvec![0; ctx.k];
            c[1] = 1;
            FFElem { ctx: ctx.clone(), c }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldDesc> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Value as u64 when the element lies in the prime field.
    pub fn as_prime_u64(&self) -> Option<u64> {
        if self.c.iter().skip(1).all(|&v| v == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    fn same_field(&self, rhs: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &rhs.ctx) || self.ctx == rhs.ctx
    }

    /// The Frobenius automorphism x ↦ x^p.
    pub fn frobenius(&self) -> Self {
        self.pow_u(self.ctx.p)
    }

    /// Applies Frobenius i times.
    pub fn frobenius_iter(&self, i: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..i % self.ctx.k {
            out = out.frobenius();
        }
        out
    }

    /// Uniform random element.
    pub fn sample(ctx: &Arc<FieldDesc>, rng: &mut dyn rand::RngCore) -> Self {
        use rand::Rng;
        let mut c: Coeffs = smallvec![0; ctx.k];
        for v in c.iter_mut() {
            *v = rng.gen_range(0..ctx.p);
        }
        FFElem { ctx: ctx.clone(), c }
    }

    /// All field elements in counter order (useful only for small fields).
    pub fn all_elements(ctx: &Arc<FieldDesc>) -> Vec<Self> {
        let size = ctx
            .size_u64()
            .expect("field too large for exhaustive enumeration");
        let mut out = Vec::with_capacity(size as usize);
        let mut c: Coeffs = smallvec![0; ctx.k];
        loop {
            out.push(FFElem {
                ctx: ctx.clone(),
                c: c.clone(),
            });
            let mut i = 0;
            loop {
                if i == ctx.k {
                    return out;
                }
                c[i] += 1;
                if c[i] < ctx.p {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    /// Multiplicative order (exhaustive; element must be nonzero and the
    /// field small enough for u64 size).
    pub fn mult_order(&self) -> u64 {
        assert!(!Field::is_zero(self));
        let q = self.ctx.size_u64().expect("field too large");
        let group = q - 1;
        // order divides q - 1; factor and descend
        let mut order = group;
        let mut rest = group;
        let mut f = 2u64;
        let mut primes = vec![];
        while f * f <= rest {
            if rest % f == 0 {
                primes.push(f);
                while rest % f == 0 {
                    rest /= f;
                }
            }
            f += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for pr in primes {
            while order % pr == 0 && self.pow_u(order / pr).is_one() {
                order /= pr;
            }
        }
        order
    }

    /// Square root, if one exists. Deterministic: returns the smaller of the
    /// two roots in the canonical element order.
    pub fn sqrt(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return Some(self.clone());
        }
        let p = self.ctx.p;
        if p == 2 {
            // Squaring is an automorphism; invert Frobenius.
            return Some(self.frobenius_iter(self.ctx.k - 1));
        }
        let q = self.ctx.size_u64().expect("field too large for sqrt");
        if self.pow_u((q - 1) / 2) != self.one_like() {
            return None;
        }
        // Tonelli–Shanks in the cyclic group of order q - 1.
        let mut s = 0u32;
        let mut m = q - 1;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        if s == 1 {
            let r = self.pow_u((q + 1) / 4);
            return Some(r.clone().min(r.neg()));
        }
        // Find a non-residue deterministically by counter order.
        let mut z = None;
        for cand in FFElem::all_elements(&self.ctx) {
            if Field::is_zero(&cand) {
                continue;
            }
            if cand.pow_u((q - 1) / 2) != self.one_like() {
                z = Some(cand);
                break;
            }
        }
        let mut c = z.expect("non-residue exists").pow_u(m);
        let mut t = self.pow_u(m);
        let mut r = self.pow_u((m + 1) / 2);
        let mut s = s;
        while !t.is_one() {
            let mut i = 0u32;
            let mut tt = t.clone();
            while !tt.is_one() {
                tt = tt.mul(&tt);
                i += 1;
            }
            let b = c.pow_u(1 << (s - i - 1));
            r = r.mul(&b);
            c = b.mul(&b);
            t = t.mul(&c);
            s = i;
        }
        debug_assert!(r.mul(&r) == *self);
        Some(r.clone().min(r.neg()))
    }
}

impl Field for FFElem {
    fn zero_like(&self) -> Self {
        FFElem {
            ctx: self.ctx.clone(),
            c: smallvec![0; self.ctx.k],
        }
    }

    fn one_like(&self) -> Self {
        let mut c: Coeffs = smallvec![0; self.ctx.k];
        c[0] = 1 % self.ctx.p;
        FFElem {
            ctx: self.ctx.clone(),
            c,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_field(rhs), "field mismatch");
        let p = self.ctx.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FFElem {
            ctx: self.ctx.clone(),
            c,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_field(rhs), "field mismatch");
        let p = self.ctx.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FFElem {
            ctx: self.ctx.clone(),
            c,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_field(rhs), "field mismatch");
        let p = self.ctx.p;
        let k = self.ctx.k;
        if k == 1 {
            return FFElem {
                ctx: self.ctx.clone(),
                c: smallvec![mul_mod_u64(self.c[0], rhs.c[0], p)],
            };
        }
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod_u64(a, b, p)) % p;
            }
        }
        let m = &self.ctx.modulus;
        for i in (k..2 * k - 1).rev() {
            let coef = prod[i];
            if coef != 0 {
                prod[i] = 0;
                for j in 0..k {
                    let sub = mul_mod_u64(coef, m[j], p);
                    prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
                }
            }
        }
        prod.truncate(k);
        FFElem {
            ctx: self.ctx.clone(),
            c: Coeffs::from_vec(prod),
        }
    }

    fn neg(&self) -> Self {
        let p = self.ctx.p;
        let c = self.c.iter().map(|&a| (p - a) % p).collect();
        FFElem {
            ctx: self.ctx.clone(),
            c,
        }
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return Some(FFElem {
                ctx: self.ctx.clone(),
                c: smallvec![inv_mod_u64(self.c[0], p)],
            });
        }
        let a: Vec<u64> = self.c.iter().copied().collect();
        let (g, s) = raw_half_xgcd(&a, &self.ctx.modulus, p);
        debug_assert_eq!(g, vec![1], "modulus is irreducible so gcd is 1");
        let mut c: Coeffs = smallvec![0; self.ctx.k];
        for (i, &v) in s.iter().enumerate() {
            c[i] = v;
        }
        Some(FFElem {
            ctx: self.ctx.clone(),
            c,
        })
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    fn from_bigint_like(&self, n: &num_bigint::BigInt) -> Self {
        use num_integer::Integer;
        let p = num_bigint::BigInt::from(self.ctx.p);
        let r = n.mod_floor(&p);
        let v: u64 = r.try_into().unwrap();
        FFElem::from_u64(&self.ctx, v)
    }
}

impl crate::field::FiniteField for FFElem {
    fn char_p(&self) -> u64 {
        self.ctx.p
    }
    fn ext_degree(&self) -> usize {
        self.ctx.k
    }
    fn field_size(&self) -> BigUint {
        self.ctx.size()
    }
    fn frob(&self) -> Self {
        self.frobenius()
    }
    fn sample_like(&self, rng: &mut dyn rand::RngCore) -> Self {
        FFElem::sample(&self.ctx, rng)
    }
}

// ---------------------------------------------------------------------------
// Subfield embedding and decoding.
// ---------------------------------------------------------------------------

#[allow(clippy::type_complexity)]
fn root_cache() -> &'static Mutex<HashMap<(u64, usize, usize), Vec<u64>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), Vec<u64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The canonical image in `big` of the power-basis generator of the degree-d
/// standard subfield: the lexicographically smallest root of the standard
/// degree-d defining polynomial inside `big`.
pub fn subfield_generator_image(big: &Arc<FieldDesc>, d: usize) -> Result<FFElem> {
    let e = big.k;
    if e % d != 0 {
        return Err(Error::NotInSubfield);
    }
    if d == 1 {
        return Ok(FFElem::from_u64(big, 1));
    }
    if d == e {
        return Ok(FFElem::gen(big));
    }
    let key = (big.p, d, e);
    if let Some(c) = root_cache().lock().unwrap().get(&key) {
        return Ok(FFElem::new(big, c));
    }
    let small = field_make(big.p, d)?;
    // Roots of the degree-d modulus inside `big`: all lie in the unique
    // subfield of order p^d. Find them by filtering x^(p^d) = x elements
    // of a root-finding pass over the modulus polynomial.
    let coeffs: Vec<FFElem> = small
        .modulus
        .iter()
        .map(|&c| FFElem::from_u64(big, c))
        .collect();
    let poly = crate::poly::Poly::new(coeffs);
    let mut roots = poly.roots();
    roots.sort();
    let root = roots.into_iter().next().ok_or(Error::NotInSubfield)?;
    root_cache()
        .lock()
        .unwrap()
        .insert(key, root.c.iter().copied().collect());
    Ok(root)
}

/// Embeds an element of a standard field F_{p^d} into a standard field
/// F_{p^e} with d | e.
pub fn embed(elem: &FFElem, big: &Arc<FieldDesc>) -> Result<FFElem> {
    if elem.ctx.as_ref() == big.as_ref() {
        return Ok(elem.clone());
    }
    if elem.ctx.p != big.p {
        return Err(Error::FieldMismatch(
            format!("F_{}^{}", elem.ctx.p, elem.ctx.k),
            format!("F_{}^{}", big.p, big.k),
        ));
    }
    let rho = subfield_generator_image(big, elem.ctx.k)?;
    let mut acc = FFElem::from_u64(big, 0);
    let mut pow = FFElem::from_u64(big, 1);
    for &c in elem.c.iter() {
        acc = acc.add(&pow.mul(&FFElem::from_u64(big, c)));
        pow = pow.mul(&rho);
    }
    Ok(acc)
}

/// Expresses an element of F_{p^e} in the standard subfield F_{p^d} (d | e),
/// if it lies there.
pub fn decode_to_subfield(elem: &FFElem, d: usize) -> Result<FFElem> {
    let e = elem.ctx.k;
    if e % d != 0 {
        return Err(Error::NotInSubfield);
    }
    if d == e {
        return Ok(elem.clone());
    }
    let small = field_make(elem.ctx.p, d)?;
    let rho = subfield_generator_image(&elem.ctx, d)?;
    // Solve elem = sum_{i<d} c_i rho^i with c_i in F_p by Gaussian
    // elimination on the e×d coordinate matrix of the rho powers.
    let p = elem.ctx.p;
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut pow = FFElem::from_u64(&elem.ctx, 1);
    for _ in 0..d {
        cols.push(pow.c.iter().copied().collect());
        pow = pow.mul(&rho);
    }
    // Augmented system rows: e equations, d unknowns.
    let mut aug: Vec<Vec<u64>> = (0..e)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(elem.c[r]);
            row
        })
        .collect();
    let mut pivot_rows = vec![usize::MAX; d];
    let mut rank = 0;
    for col in 0..d {
        let Some(pr) = (rank..e).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = inv_mod_u64(aug[rank][col], p);
        for v in aug[rank].iter_mut() {
            *v = mul_mod_u64(*v, inv, p);
        }
        for r in 0..e {
            if r != rank && aug[r][col] != 0 {
                let f = aug[r][col];
                for j in 0..=d {
                    let sub = mul_mod_u64(f, aug[rank][j], p);
                    aug[r][j] = (aug[r][j] + p - sub) % p;
                }
            }
        }
        pivot_rows[col] = rank;
        rank += 1;
    }
    // Consistency: rows beyond rank must have zero rhs.
    for row in aug.iter().skip(rank) {
        if row[d] != 0 {
            return Err(Error::NotInSubfield);
        }
    }
    let mut c = vec![0u64; d];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        if pr != usize::MAX {
            c[col] = aug[pr][d];
        }
    }
    Ok(FFElem::new(&small, &c))
}

/// Degree of the smallest standard subfield containing `elem`: the size of
/// its Frobenius orbit.
pub fn element_degree(elem: &FFElem) -> usize {
    let mut d = 1;
    let mut cur = elem.frobenius();
    while cur != *elem {
        cur = cur.frobenius();
        d += 1;
    }
    d
}
