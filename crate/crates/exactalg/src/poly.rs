//! Dense univariate polynomials over an exact field, with complete
//! factorization over finite fields (squarefree decomposition,
//! distinct-degree and equal-degree splitting).
//!
//! The zero polynomial has an empty coefficient vector; every polynomial
//! additionally carries one zero element of its coefficient field so that
//! constants of the right field can always be manufactured.

use crate::field::{Field, FiniteField};
use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    like: F,
}

impl<F: Field> Poly<F> {
    /// Builds a polynomial from coefficients c_0, c_1, … (constant first).
    /// The input must be nonempty so a field sample is available; trailing
    /// zeros are trimmed.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "use Poly::zero for the empty case");
        let like = coeffs[0].zero_like();
        let mut p = Poly { coeffs, like };
        p.trim();
        p
    }

    pub fn zero(like: &F) -> Self {
        Poly {
            coeffs: vec![],
            like: like.zero_like(),
        }
    }

    pub fn constant(c: F) -> Self {
        let like = c.zero_like();
        let mut p = Poly {
            coeffs: vec![c],
            like,
        };
        p.trim();
        p
    }

    pub fn one(like: &F) -> Self {
        Poly::constant(like.one_like())
    }

    /// The monomial x.
    pub fn x(like: &F) -> Self {
        Poly {
            coeffs: vec![like.zero_like(), like.one_like()],
            like: like.zero_like(),
        }
    }

    pub fn from_i64(like: &F, coeffs: &[i64]) -> Self {
        let v: Vec<F> = coeffs.iter().map(|&c| like.from_i64_like(c)).collect();
        if v.is_empty() {
            Poly::zero(like)
        } else {
            Poly::new(v)
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(Field::is_zero) == Some(true) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn like(&self) -> &F {
        &self.like
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.like.clone())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.like.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        let mut p = Poly {
            coeffs: out,
            like: self.like.clone(),
        };
        p.trim();
        p
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        let mut p = Poly {
            coeffs: out,
            like: self.like.clone(),
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
            like: self.like.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.like);
        }
        let mut out = vec![self.like.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        let mut p = Poly {
            coeffs: out,
            like: self.like.clone(),
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.like);
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            like: self.like.clone(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.like.clone(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly {
            coeffs: out,
            like: self.like.clone(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().inv().expect("nonzero lead");
        let mut r = self.clone();
        if r.degree().map_or(true, |dr| dr < dd) {
            return (Poly::zero(&self.like), r);
        }
        let dq = r.coeffs.len() - d.coeffs.len();
        let mut q = vec![self.like.clone(); dq + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.coeffs[dr].mul(&lead_inv);
            q[dr - dd] = c.clone();
            for j in 0..=dd {
                let idx = dr - dd + j;
                r.coeffs[idx] = r.coeffs[idx].sub(&c.mul(&d.coeffs[j]));
            }
            r.trim();
        }
        let mut qp = Poly {
            coeffs: q,
            like: self.like.clone(),
        };
        qp.trim();
        (qp, r)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Half extended gcd: returns (g, s) with s·self ≡ g (mod m), g monic.
    pub fn half_xgcd(&self, m: &Self) -> (Self, Self) {
        let mut r0 = m.clone();
        let mut r1 = self.rem(m);
        let mut s0 = Poly::zero(&self.like);
        let mut s1 = Poly::one(&self.like);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s_new = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_new;
        }
        match r0.lead() {
            None => (r0, s0),
            Some(l) => {
                let li = l.inv().expect("nonzero lead");
                (r0.scale(&li), s0.scale(&li))
            }
        }
    }

    /// Inverse of self modulo m, if coprime.
    pub fn invert_mod(&self, m: &Self) -> Option<Self> {
        let (g, s) = self.half_xgcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.like);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&self.like.from_i64_like(i as i64)));
        }
        let mut p = Poly {
            coeffs: out,
            like: self.like.clone(),
        };
        p.trim();
        p
    }

    /// self(g): substitution.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.like);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// self^e modulo m.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Poly::one(&self.like);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        result
    }

    /// Resultant of self and rhs.
    pub fn resultant(&self, rhs: &Self) -> F {
        let zero = self.like.clone();
        let one = self.like.one_like();
        if self.is_zero() || rhs.is_zero() {
            return zero;
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut acc = one.clone();
        let mut negate = false;
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                acc = acc.mul(&b.coeffs[0].pow_u(da as u64));
                break;
            }
            if da < db {
                std::mem::swap(&mut a, &mut b);
                if da % 2 == 1 && db % 2 == 1 {
                    negate = !negate;
                }
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return zero;
            }
            let dr = r.degree().unwrap();
            acc = acc.mul(&b.lead().unwrap().pow_u((da - dr) as u64));
            if da % 2 == 1 && db % 2 == 1 {
                negate = !negate;
            }
            a = b;
            b = r;
        }
        if negate {
            acc.neg()
        } else {
            acc
        }
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(F, F)]) -> Self {
        assert!(!points.is_empty());
        let like = points[0].0.zero_like();
        let mut acc = Poly::zero(&like);
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut num = Poly::one(&like);
            let mut den = like.one_like();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&Poly::new(vec![xj.neg(), like.one_like()]));
                den = den.mul(&xi.sub(xj));
            }
            let li = den.inv().expect("interpolation nodes must be distinct");
            acc = acc.add(&num.scale(&yi.mul(&li)));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Factorization over finite fields.
// ---------------------------------------------------------------------------

impl<F: FiniteField> Poly<F> {
    /// Inverse of the prime-field Frobenius on an element: c ↦ c^(q/p).
    fn pth_root_elem(c: &F) -> F {
        let k = c.ext_degree();
        let mut out = c.clone();
        for _ in 0..k.saturating_sub(1) {
            out = out.frob();
        }
        out
    }

    /// For f with zero derivative (so f = g(x^p)), the p-th root g.
    fn pth_root(&self) -> Self {
        let p = self.like.char_p() as usize;
        let d = self.degree().expect("nonzero");
        let mut out = Vec::with_capacity(d / p + 1);
        for i in 0..=d / p {
            out.push(Self::pth_root_elem(&self.coeff(i * p)));
        }
        Poly::new(out)
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// monic squarefree factors with multiplicities, product recovering f.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let fp = f.derivative();
        if fp.is_zero() {
            let p = self.like.char_p() as usize;
            return f
                .pth_root()
                .squarefree_decomposition()
                .into_iter()
                .map(|(g, e)| (g, e * p))
                .collect();
        }
        let mut out = vec![];
        let mut c = f.gcd(&fp);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            c = c.div_exact(&y);
            w = y;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let p = self.like.char_p() as usize;
            for (g, e) in c.pth_root().squarefree_decomposition() {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree decomposition of a monic squarefree polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let q = self.like.field_size();
        let mut f = self.monic();
        let x = Poly::x(&self.like);
        let mut h = x.rem(&f);
        let mut out = vec![];
        let mut d = 0usize;
        while let Some(df) = f.degree() {
            if df == 0 {
                break;
            }
            d += 1;
            if 2 * d > df {
                out.push((f.clone(), df));
                break;
            }
            h = h.pow_mod(&q, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = f.div_exact(&g);
                h = h.rem(&f);
            }
        }
        out
    }

    /// Equal-degree splitting: g is monic squarefree, all irreducible
    /// factors of degree d. Deterministically seeded Cantor–Zassenhaus.
    pub fn equal_degree(&self, d: usize) -> Vec<Self> {
        let g = self.monic();
        let dg = g.degree().unwrap_or(0);
        if dg == 0 {
            return vec![];
        }
        if dg == d {
            return vec![g];
        }
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_cafe_f00d_0001);
        let p = self.like.char_p();
        let q = self.like.field_size();
        loop {
            // Random polynomial of degree < dg.
            let coeffs: Vec<F> = (0..dg).map(|_| self.like.sample_like(&mut rng)).collect();
            let t = Poly::new_or_zero(coeffs, &self.like);
            if t.degree().unwrap_or(0) == 0 {
                continue;
            }
            let splitter = if p == 2 {
                // Trace map over F_2: sum of t^(2^i), i < k·d.
                let k = self.like.ext_degree();
                let mut acc = t.rem(&g);
                let mut cur = t.rem(&g);
                for _ in 1..k * d {
                    cur = cur.mul(&cur).rem(&g);
                    acc = acc.add(&cur);
                }
                acc
            } else {
                // t^((q^d − 1)/2) − 1 mod g.
                let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
                let tp = t.pow_mod(&e, &g);
                tp.sub(&Poly::one(&self.like))
            };
            let h = splitter.gcd(&g);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < dg {
                let mut out = h.equal_degree(d);
                out.extend(g.div_exact(&h).equal_degree(d));
                return out;
            }
        }
    }

    fn new_or_zero(coeffs: Vec<F>, like: &F) -> Self {
        if coeffs.is_empty() {
            Poly::zero(like)
        } else {
            Poly::new(coeffs)
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// plus the leading coefficient. Deterministic run-to-run.
    pub fn factor(&self) -> (F, Vec<(Self, usize)>) {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let lead = self.lead().unwrap().clone();
        let mut out: Vec<(Self, usize)> = vec![];
        for (sf, mult) in self.squarefree_decomposition() {
            for (prod, d) in sf.distinct_degree() {
                for irr in prod.equal_degree(d) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| compare_coeff_vectors(&a.0, &b.0))
        });
        (lead, out)
    }

    /// Distinct roots in the coefficient field.
    pub fn roots(&self) -> Vec<F> {
        if self.is_zero() {
            panic!("roots of zero polynomial");
        }
        if self.degree() == Some(0) {
            return vec![];
        }
        let q = self.like.field_size();
        // gcd(x^q − x, f) collects exactly the linear factors.
        let f = self.monic();
        let x = Poly::x(&self.like);
        let xq = x.pow_mod(&q, &f);
        let lin = xq.sub(&x).gcd(&f);
        let mut roots: Vec<F> = lin
            .equal_degree(1)
            .into_iter()
            .map(|l| l.coeff(0).neg())
            .collect();
        roots.sort();
        roots
    }

    /// True iff self is irreducible of degree ≥ 1.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(k) => {
                let q = self.like.field_size();
                let f = self.monic();
                let x = Poly::x(&self.like);
                let mut h = x.clone();
                // x^(q^k) ≡ x and gcd(x^(q^(k/r)) − x, f) = 1 for primes r | k.
                let prime_divs = prime_divisors(k);
                let mut powers = vec![];
                for i in 1..=k {
                    h = h.pow_mod(&q, &f);
                    powers.push(h.clone());
                    let _ = i;
                }
                if powers[k - 1].sub(&x).rem(&f).degree().is_some() {
                    return false;
                }
                for r in prime_divs {
                    let g = powers[k / r - 1].sub(&x).gcd(&f);
                    if g.degree() != Some(0) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

fn compare_coeff_vectors<F: FiniteField>(a: &Poly<F>, b: &Poly<F>) -> std::cmp::Ordering {
    a.coeffs.iter().rev().cmp(b.coeffs.iter().rev())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_make, FFElem};
    use crate::field::rat_int;

    fn fp(p: u64) -> std::sync::Arc<crate::ff::FieldDesc> {
        field_make(p, 1).unwrap()
    }

    #[test]
    fn divrem_and_gcd_over_f7() {
        let ctx = fp(7);
        let like = FFElem::from_u64(&ctx, 0);
        // (x^2 - 1) = (x - 1)(x + 1)
        let f = Poly::from_i64(&like, &[-1, 0, 1]);
        let g = Poly::from_i64(&like, &[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_i64(&like, &[1, 1]));
        let h = Poly::from_i64(&like, &[1, 1]);
        assert_eq!(f.gcd(&h), h.monic());
    }

    #[test]
    fn resultant_of_linears() {
        // res(x - a, x - b) = a - b over Q.
        let a = rat_int(5);
        let b = rat_int(2);
        let f = Poly::new(vec![a.clone().neg(), rat_int(1)]);
        let g = Poly::new(vec![b.clone().neg(), rat_int(1)]);
        assert_eq!(f.resultant(&g), rat_int(3));
        // res(f, g) = lc(f)^deg g · prod g(roots of f):
        // f = (x-1)(x-2) = x^2-3x+2, g = x-4 → g(1)g(2) = (-3)(-2) = 6
        let f = Poly::new(vec![rat_int(2), rat_int(-3), rat_int(1)]);
        let g = Poly::new(vec![rat_int(-4), rat_int(1)]);
        assert_eq!(f.resultant(&g), rat_int(6));
        // swap order: res(g, f) = (-1)^(2·1) res(f, g) = 6
        assert_eq!(g.resultant(&f), rat_int(6));
    }

    #[test]
    fn factor_over_f5() {
        let ctx = fp(5);
        let like = FFElem::from_u64(&ctx, 0);
        // x^4 - 1 factors as (x-1)(x-2)(x-3)(x-4) over F_5.
        let f = Poly::from_i64(&like, &[-1, 0, 0, 0, 1]);
        let (lead, factors) = f.factor();
        assert!(lead.is_one());
        assert_eq!(factors.len(), 4);
        assert!(factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        let mut roots = f.roots();
        roots.sort();
        assert_eq!(
            roots,
            vec![1u64, 2, 3, 4]
                .into_iter()
                .map(|v| FFElem::from_u64(&ctx, v))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn factor_with_multiplicity_and_extension_factors() {
        let ctx = fp(3);
        let like = FFElem::from_u64(&ctx, 0);
        // (x^2 + 1)^2 (x + 2)^3 over F_3; x^2+1 is irreducible mod 3.
        let a = Poly::from_i64(&like, &[1, 0, 1]);
        let b = Poly::from_i64(&like, &[2, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b);
        let (_, factors) = f.factor();
        assert_eq!(factors.len(), 2);
        let mut degs: Vec<(usize, usize)> = factors
            .iter()
            .map(|(g, e)| (g.degree().unwrap(), *e))
            .collect();
        degs.sort();
        assert_eq!(degs, vec![(1, 3), (2, 2)]);
        // Reconstruct.
        let mut prod = Poly::one(&like);
        for (g, e) in &factors {
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn factor_char2_inseparable() {
        let ctx = fp(2);
        let like = FFElem::from_u64(&ctx, 0);
        // x^4 + x^2 = (x^2+x)^2 = x^2 (x+1)^2 over F_2.
        let f = Poly::from_i64(&like, &[0, 0, 1, 0, 1]);
        let (_, factors) = f.factor();
        let mut degs: Vec<(usize, usize)> = factors
            .iter()
            .map(|(g, e)| (g.degree().unwrap(), *e))
            .collect();
        degs.sort();
        assert_eq!(degs, vec![(1, 2), (1, 2)]);
    }

    #[test]
    fn factor_over_f25() {
        let f25 = field_make(5, 2).unwrap();
        let like = FFElem::from_u64(&f25, 0);
        // x^2 + 2 = x^2 - 3: the defining polynomial of F_25 splits there.
        let f = Poly::from_i64(&like, &[2, 0, 1]);
        let roots = f.roots();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
        assert_eq!(roots[0], roots[1].neg());
        assert!(roots[0] < roots[1]);
    }

    #[test]
    fn irreducibility_test() {
        let ctx = fp(5);
        let like = FFElem::from_u64(&ctx, 0);
        assert!(Poly::from_i64(&like, &[2, 0, 1]).is_irreducible()); // x^2+2
        assert!(!Poly::from_i64(&like, &[1, 0, 1]).is_irreducible()); // x^2+1 = (x-2)(x-3)
        assert!(!Poly::from_i64(&like, &[4, 0, 0, 1]).is_irreducible()); // x^3+4 has root 1
        assert!(Poly::from_i64(&like, &[1, 1, 1]).is_irreducible()); // x^2+x+1 (disc −3 = 2, non-square mod 5)
    }

    #[test]
    fn interpolation_roundtrip_over_q() {
        let f = Poly::new(vec![rat_int(3), rat_int(-2), rat_int(1), rat_int(7)]);
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let x = rat_int(i);
                (x.clone(), f.eval(&x))
            })
            .collect();
        assert_eq!(Poly::interpolate(&pts), f);
    }

    #[test]
    fn pow_mod_fermat() {
        let ctx = fp(7);
        let like = FFElem::from_u64(&ctx, 0);
        // x^7 ≡ x mod (x^7 - x); also x^(7^2) ≡ x mod any irreducible quadratic.
        let f = Poly::from_i64(&like, &[3, 1, 1]); // x^2+x+3, irreducible mod 7? disc = 1-12 = -11 = 3 mod 7; squares mod 7 = {1,2,4}; yes irreducible
        assert!(f.is_irreducible());
        let x = Poly::x(&like);
        let xq2 = x.pow_mod(&BigUint::from(49u32), &f);
        assert_eq!(xq2, x.rem(&f));
    }

    #[test]
    fn compose_and_derivative() {
        let f = Poly::new(vec![rat_int(1), rat_int(2), rat_int(3)]); // 1+2x+3x^2
        let g = Poly::new(vec![rat_int(0), rat_int(0), rat_int(1)]); // x^2
        assert_eq!(
            f.compose(&g),
            Poly::new(vec![rat_int(1), rat_int(0), rat_int(2), rat_int(0), rat_int(3)])
        );
        assert_eq!(f.derivative(), Poly::new(vec![rat_int(2), rat_int(6)]));
    }
}
