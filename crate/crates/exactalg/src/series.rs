//! Truncated power series a_0 + a_1 t + … + a_{m-1} t^{m-1} + O(t^m) over an
//! exact field. The coefficient vector always has length exactly m (the
//! precision); binary operations truncate to the smaller precision.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<F: Field> {
    coeffs: Vec<F>,
    like: F,
}

impl<F: Field> TruncSeries<F> {
    /// Series with the given coefficients truncated or zero-padded to
    /// precision `prec` ≥ 1.
    pub fn new(like: &F, coeffs: Vec<F>, prec: usize) -> Self {
        assert!(prec >= 1, "precision must be at least 1");
        let zero = like.zero_like();
        let mut c = coeffs;
        c.resize(prec, zero.clone());
        TruncSeries { coeffs: c, like: zero }
    }

    pub fn zero(like: &F, prec: usize) -> Self {
        Self::new(like, vec![], prec)
    }

    pub fn one(like: &F, prec: usize) -> Self {
        Self::new(like, vec![like.one_like()], prec)
    }

    /// The series t + O(t^prec).
    pub fn t(like: &F, prec: usize) -> Self {
        Self::new(like, vec![like.zero_like(), like.one_like()], prec)
    }

    pub fn from_poly(p: &Poly<F>, prec: usize) -> Self {
        Self::new(p.like(), p.coeffs().to_vec(), prec)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.like.clone())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1 && prec <= self.prec());
        Self::new(&self.like, self.coeffs[..prec].to_vec(), prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let m = self.prec().min(rhs.prec());
        let c = (0..m).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect();
        TruncSeries {
            coeffs: c,
            like: self.like.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let m = self.prec().min(rhs.prec());
        let c = (0..m).map(|i| self.coeffs[i].sub(&rhs.coeffs[i])).collect();
        TruncSeries {
            coeffs: c,
            like: self.like.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
            like: self.like.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            like: self.like.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = self.prec().min(rhs.prec());
        let mut out = vec![self.like.clone(); m];
        for (i, a) in self.coeffs.iter().take(m).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(m - i).enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncSeries {
            coeffs: out,
            like: self.like.clone(),
        }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let b0 = a0.inv().ok_or(Error::NonUnit)?;
        let m = self.prec();
        let mut out = vec![self.like.clone(); m];
        out[0] = b0.clone();
        for n in 1..m {
            let mut acc = self.like.clone();
            for i in 1..=n {
                acc = acc.add(&self.coeffs[i].mul(&out[n - i]));
            }
            out[n] = acc.mul(&b0).neg();
        }
        Ok(TruncSeries {
            coeffs: out,
            like: self.like.clone(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Formal derivative; precision drops by one.
    pub fn derive(&self) -> Self {
        assert!(self.prec() >= 2, "cannot derive at precision 1");
        let c = (1..self.prec())
            .map(|i| self.coeffs[i].mul(&self.like.from_i64_like(i as i64)))
            .collect();
        TruncSeries {
            coeffs: c,
            like: self.like.clone(),
        }
    }

    /// self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::BadComposition);
        }
        let m = self.prec().min(inner.prec());
        let inner = inner.truncate(m);
        let mut acc = TruncSeries::zero(&self.like, m);
        for c in self.coeffs[..m].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Multiplies by t^k; precision grows by k (t^k·(s + O(t^m)) is known
    /// through O(t^(m+k))).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = vec![self.like.clone(); self.prec() + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + k] = c.clone();
        }
        TruncSeries {
            coeffs: out,
            like: self.like.clone(),
        }
    }

    /// Divides by t^k; requires valuation ≥ k. Precision drops by k.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Other(format!("valuation below {k}")));
        }
        assert!(self.prec() > k);
        Ok(TruncSeries {
            coeffs: self.coeffs[k..].to_vec(),
            like: self.like.clone(),
        })
    }

    /// Square root with prescribed constant-term root: `root0`² must equal
    /// the constant term, which must be a unit, and the characteristic must
    /// not be 2.
    pub fn sqrt_with(&self, root0: &F) -> Result<Self> {
        if root0.mul(root0) != self.coeffs[0] {
            return Err(Error::NoSquareRoot(
                "provided constant-term root does not square to a0".into(),
            ));
        }
        let two = self.like.from_i64_like(2);
        let inv2b0 = two
            .mul(root0)
            .inv()
            .ok_or_else(|| Error::NoSquareRoot("constant term not a unit (or char 2)".into()))?;
        let m = self.prec();
        let mut out = vec![self.like.clone(); m];
        out[0] = root0.clone();
        for n in 1..m {
            // a_n = sum_{i+j=n} b_i b_j  ⇒  2 b_0 b_n = a_n − Σ_{0<i<n} b_i b_{n−i}
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc = acc.sub(&out[i].mul(&out[n - i]));
            }
            out[n] = acc.mul(&inv2b0);
        }
        Ok(TruncSeries {
            coeffs: out,
            like: self.like.clone(),
        })
    }
}
