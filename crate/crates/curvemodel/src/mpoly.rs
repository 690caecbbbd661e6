//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in descending graded reverse lexicographic order
//! with nonzero coefficients, so the leading term is `terms()[0]` and
//! equality is structural. The type stays deliberately small: only the
//! operations the model pipeline needs (arithmetic, substitution, partial
//! derivatives, resultant support, series evaluation, parsing).

use exactalg::{Field, Poly, TruncSeries};
use num_rational::BigRational;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Exponent vector; one entry per variable.
pub type Exps = SmallVec<[u8; 8]>;

/// Graded reverse lexicographic comparison (degrevlex): higher total degree
/// wins; on ties the vector whose last differing exponent is smaller wins.
pub fn cmp_degrevlex(a: &Exps, b: &Exps) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// A sparse multivariate polynomial over `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    nvars: usize,
    like: F,
    /// Sorted strictly descending in degrevlex; coefficients nonzero.
    terms: Vec<(Exps, F)>,
}

impl<F: Field> MPoly<F> {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize, like: &F) -> Self {
        MPoly { nvars, like: like.zero_like(), terms: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: &F) -> Self {
        let mut p = MPoly::zero(nvars, c);
        if !c.is_zero() {
            p.terms.push((Exps::from_elem(0, nvars), c.clone()));
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize, like: &F) -> Self {
        assert!(i < nvars);
        let mut e = Exps::from_elem(0, nvars);
        e[i] = 1;
        MPoly { nvars, like: like.zero_like(), terms: vec![(e, like.one_like())] }
    }

    /// Builds from unsorted terms, combining duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, like: &F, terms: Vec<(Exps, F)>) -> Self {
        let mut map: BTreeMap<Vec<u8>, F> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            let key = e.to_vec();
            match map.remove(&key) {
                Some(prev) => {
                    let s = prev.add(&c);
                    map.insert(key, s);
                }
                None => {
                    map.insert(key, c);
                }
            }
        }
        let mut out: Vec<(Exps, F)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Exps::from_vec(e), c))
            .collect();
        out.sort_by(|a, b| cmp_degrevlex(&b.0, &a.0));
        MPoly { nvars, like: like.zero_like(), terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn like(&self) -> &F {
        &self.like
    }

    pub fn terms(&self) -> &[(Exps, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    /// The leading (degrevlex-greatest) term.
    pub fn lead(&self) -> Option<&(Exps, F)> {
        self.terms.first()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Degree in the single variable `i` (0 for constants and zero).
    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0)
    }

    /// Weighted degree of every term if the polynomial is homogeneous for
    /// the given weights, else `None`.
    pub fn homogeneous_degree(&self, weights: &[usize]) -> Option<u32> {
        assert_eq!(weights.len(), self.nvars);
        let mut seen: Option<u32> = None;
        for (e, _) in &self.terms {
            let d: u32 = e
                .iter()
                .zip(weights)
                .map(|(&x, &w)| x as u32 * w as u32)
                .sum();
            match seen {
                None => seen = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        seen
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        MPoly::from_terms(self.nvars, &self.like, terms)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            like: self.like.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars, &self.like);
        }
        MPoly {
            nvars: self.nvars,
            like: self.like.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<Vec<u8>, F> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = Vec::with_capacity(self.nvars);
                for i in 0..self.nvars {
                    e.push(ea[i].checked_add(eb[i]).expect("exponent overflow"));
                }
                let c = ca.mul(cb);
                match acc.remove(&e) {
                    Some(prev) => {
                        acc.insert(e, prev.add(&c));
                    }
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let mut out: Vec<(Exps, F)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Exps::from_vec(e), c))
            .collect();
        out.sort_by(|a, b| cmp_degrevlex(&b.0, &a.0));
        MPoly { nvars: self.nvars, like: self.like.clone(), terms: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::constant(self.nvars, &self.like.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at a point, one value per variable.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<F>> = Vec::with_capacity(self.nvars);
        for (i, v) in point.iter().enumerate() {
            let maxe = self.degree_in(i) as usize;
            let mut row = Vec::with_capacity(maxe + 1);
            row.push(v.one_like());
            for k in 1..=maxe {
                let prev = &row[k - 1];
                row.push(prev.mul(v));
            }
            powers.push(row);
        }
        let mut acc = self.like.zero_like();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t = t.mul(&powers[i][e[i] as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluates with truncated power series substituted for the variables.
    pub fn eval_series(&self, point: &[TruncSeries<F>]) -> TruncSeries<F> {
        assert_eq!(point.len(), self.nvars);
        assert!(!point.is_empty());
        let prec = point[0].prec();
        let mut powers: Vec<Vec<TruncSeries<F>>> = Vec::with_capacity(self.nvars);
        for (i, v) in point.iter().enumerate() {
            let maxe = self.degree_in(i) as usize;
            let mut row = Vec::with_capacity(maxe + 1);
            row.push(TruncSeries::one(&self.like, prec));
            for k in 1..=maxe {
                let prev: TruncSeries<F> = row[k - 1].clone();
                row.push(prev.mul(v));
            }
            powers.push(row);
        }
        let mut acc = TruncSeries::zero(&self.like, prec);
        for (e, c) in &self.terms {
            let mut t = TruncSeries::one(&self.like, prec).scale(c);
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t = t.mul(&powers[i][e[i] as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            let k = c.mul(&c.from_i64_like(e[i] as i64));
            terms.push((ne, k));
        }
        MPoly::from_terms(self.nvars, &self.like, terms)
    }

    /// Substitutes a constant for `x_i`; the variable count is unchanged and
    /// `x_i` no longer occurs in the result.
    pub fn set_var_const(&self, i: usize, v: &F) -> Self {
        assert!(i < self.nvars);
        let maxe = self.degree_in(i) as usize;
        let mut powers = Vec::with_capacity(maxe + 1);
        powers.push(v.one_like());
        for k in 1..=maxe {
            let prev: &F = &powers[k - 1];
            powers.push(prev.mul(v));
        }
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let pw = e[i] as usize;
            ne[i] = 0;
            terms.push((ne, c.mul(&powers[pw])));
        }
        MPoly::from_terms(self.nvars, &self.like, terms)
    }

    /// Applies the linear substitution x_i ↦ Σ_j m[i][j]·x_j.
    pub fn subst_linear(&self, m: &exactalg::Mat<F>) -> Self {
        assert_eq!(m.nrows(), self.nvars);
        assert_eq!(m.ncols(), self.nvars);
        let images: Vec<MPoly<F>> = (0..self.nvars)
            .map(|i| {
                let mut t = Vec::new();
                for j in 0..self.nvars {
                    let c = m.at(i, j);
                    if !c.is_zero() {
                        let mut e = Exps::from_elem(0, self.nvars);
                        e[j] = 1;
                        t.push((e, c.clone()));
                    }
                }
                MPoly::from_terms(self.nvars, &self.like, t)
            })
            .collect();
        let mut acc = MPoly::zero(self.nvars, &self.like);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(self.nvars, c);
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t = t.mul(&images[i].pow(e[i] as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Field>(&self, like: &G, f: impl Fn(&F) -> G) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .collect();
        MPoly::from_terms(self.nvars, like, terms)
    }

    /// Views the polynomial as univariate in `x_i`: ascending coefficient
    /// list whose entries are polynomials in the remaining variables.
    pub fn as_univariate_in(&self, i: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(i) as usize;
        let mut rows: Vec<Vec<(Exps, F)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let pw = e[i] as usize;
            ne[i] = 0;
            rows[pw].push((ne, c.clone()));
        }
        rows.into_iter()
            .map(|t| MPoly::from_terms(self.nvars, &self.like, t))
            .collect()
    }

    /// Extracts the polynomial as univariate in `x_i` when no other variable
    /// occurs; `None` otherwise.
    pub fn to_poly_in(&self, i: usize) -> Option<Poly<F>> {
        for (e, _) in &self.terms {
            for (j, &x) in e.iter().enumerate() {
                if j != i && x != 0 {
                    return None;
                }
            }
        }
        let d = self.degree_in(i) as usize;
        let mut coeffs = vec![self.like.zero_like(); d + 1];
        for (e, c) in &self.terms {
            coeffs[e[i] as usize] = c.clone();
        }
        Some(Poly::new(coeffs))
    }

    /// The set of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .collect()
    }
}

/// Determinant of a small square matrix of polynomials (cofactor expansion;
/// intended for Sylvester matrices and Jacobian minors of size at most 4).
pub fn det_mpoly<F: Field>(m: &[Vec<MPoly<F>>]) -> MPoly<F> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    if n == 1 {
        return m[0][0].clone();
    }
    let like = m[0][0].like().clone();
    let nvars = m[0][0].nvars();
    let mut acc = MPoly::zero(nvars, &like);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = entry.mul(&det_mpoly(&minor));
        acc = if j % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

/// Sylvester resultant of `f` and `g` with respect to `x_i`, using their
/// actual degrees in `x_i`. Both must have positive degree in `x_i`.
pub fn sylvester_resultant<F: Field>(f: &MPoly<F>, g: &MPoly<F>, i: usize) -> MPoly<F> {
    let df = f.degree_in(i) as usize;
    let dg = g.degree_in(i) as usize;
    assert!(df > 0 && dg > 0, "resultant needs positive degrees");
    let fa = f.as_univariate_in(i);
    let ga = g.as_univariate_in(i);
    let n = df + dg;
    let like = f.like().clone();
    let nvars = f.nvars();
    let zero = MPoly::zero(nvars, &like);
    let mut rows: Vec<Vec<MPoly<F>>> = Vec::with_capacity(n);
    for s in 0..dg {
        let mut row = vec![zero.clone(); n];
        for (k, c) in fa.iter().enumerate() {
            row[s + df - k] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..df {
        let mut row = vec![zero.clone(); n];
        for (k, c) in ga.iter().enumerate() {
            row[s + dg - k] = c.clone();
        }
        rows.push(row);
    }
    det_mpoly(&rows)
}

/// Parses a polynomial over the rationals from the data-file grammar:
/// terms joined by ` + ` / ` - `, each a `*`-separated product of an
/// optional rational coefficient and factors `xK` or `xK^E`.
pub fn parse_poly(s: &str, nvars: usize) -> Result<MPoly<BigRational>> {
    let zero = BigRational::from_integer(0.into());
    let normalized = s.replace(" - ", " + -");
    let mut terms: Vec<(Exps, BigRational)> = Vec::new();
    for piece in normalized.split(" + ") {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::Parse { what: "polynomial term", text: s.to_string() });
        }
        let (sign, body) = match piece.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, piece),
        };
        let mut coeff = BigRational::from_integer(1.into());
        let mut exps = Exps::from_elem(0, nvars);
        for factor in body.split('*') {
            let factor = factor.trim();
            if let Some(rest) = factor.strip_prefix('x') {
                let (var_s, pow_s) = match rest.split_once('^') {
                    Some((v, p)) => (v, Some(p)),
                    None => (rest, None),
                };
                let vi: usize = var_s.parse().map_err(|_| Error::Parse {
                    what: "variable index",
                    text: factor.to_string(),
                })?;
                if vi >= nvars {
                    return Err(Error::Parse { what: "variable index", text: factor.to_string() });
                }
                let e: u8 = match pow_s {
                    Some(p) => p.parse().map_err(|_| Error::Parse {
                        what: "exponent",
                        text: factor.to_string(),
                    })?,
                    None => 1,
                };
                exps[vi] = exps[vi].checked_add(e).ok_or(Error::Parse {
                    what: "exponent",
                    text: factor.to_string(),
                })?;
            } else {
                let c = parse_rational(factor)?;
                coeff *= c;
            }
        }
        if sign {
            coeff = -coeff;
        }
        terms.push((exps, coeff));
    }
    Ok(MPoly::from_terms(nvars, &zero, terms))
}

/// Parses a rational number in `a` or `a/b` form.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse { what: "rational", text: s.to_string() })
}

impl<F: Field> std::fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{:?}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::{field_make, rat_int, FFElem};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_eval_quartic_term_grammar() {
        let p = parse_poly("x0^3*x2 - 2*x0^2*x1^2 + 1/2*x1 - 3", 3).unwrap();
        let at = p.eval(&[rat_int(1), rat_int(2), rat_int(3)]);
        // 1*3 - 2*4 + 1 - 3 = -7
        assert_eq!(at, rat_int(-7));
        let leading_neg = parse_poly("-x0^2 + x1", 2).unwrap();
        assert_eq!(leading_neg.eval(&[rat_int(3), rat_int(4)]), rat_int(-5));
    }

    #[test]
    fn degrevlex_orders_standard_monomials() {
        // In three variables: x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2.
        let mono = |a: u8, b: u8, c: u8| Exps::from_slice(&[a, b, c]);
        let order = [
            mono(2, 0, 0),
            mono(1, 1, 0),
            mono(0, 2, 0),
            mono(1, 0, 1),
            mono(0, 1, 1),
            mono(0, 0, 2),
        ];
        for w in order.windows(2) {
            assert_eq!(cmp_degrevlex(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn homogeneity_with_weights() {
        let p = parse_poly("x1^2 - x0^6 - 4*x2^6", 3).unwrap();
        assert_eq!(p.homogeneous_degree(&[1, 3, 1]), Some(6));
        assert_eq!(p.homogeneous_degree(&[1, 1, 1]), None);
    }

    #[test]
    fn partial_and_linear_substitution() {
        let p = parse_poly("x0^2*x1 + x1^3", 2).unwrap();
        let dp = p.partial(0);
        assert_eq!(dp, parse_poly("2*x0*x1", 2).unwrap());
        // Swap variables via the permutation matrix.
        let zero = rat_int(0);
        let m = exactalg::Mat::from_rows(vec![
            vec![zero.clone(), rat_int(1)],
            vec![rat_int(1), zero.clone()],
        ]);
        assert_eq!(p.subst_linear(&m), parse_poly("x1^2*x0 + x0^3", 2).unwrap());
    }

    #[test]
    fn resultant_of_plane_conics_vanishes_at_shared_root() {
        // f = u^2 + v^2 - 2, g = u*v - 1 share (1, 1).
        let f = parse_poly("x0^2 + x1^2 - 2", 2).unwrap();
        let g = parse_poly("x0*x1 - 1", 2).unwrap();
        let r = sylvester_resultant(&f, &g, 1);
        let ru = r.to_poly_in(0).expect("resultant is univariate in x0");
        assert!(ru.eval(&rat_int(1)).is_zero());
        assert!(!ru.eval(&rat_int(2)).is_zero());
    }

    #[test]
    fn determinant_matches_resultant_sign_conventions() {
        // Res_x(x - a, x - b) = b - a as a polynomial in (a, b) = (x0, x1).
        let f = parse_poly("x2 - x0", 3).unwrap();
        let g = parse_poly("x2 - x1", 3).unwrap();
        let r = sylvester_resultant(&f, &g, 2);
        assert_eq!(r, parse_poly("x1 - x0", 3).unwrap());
    }

    #[test]
    fn series_evaluation_matches_point_evaluation() {
        let ctx = field_make(7, 1).unwrap();
        let lift = |n: u64| FFElem::from_u64(&ctx, n);
        let p = parse_poly("x0^2 + 2*x0*x1 + 3", 2).unwrap();
        let pf = p.map_coeffs(&lift(0), |c| {
            lift(0).from_bigint_like(c.numer())
        });
        let a = TruncSeries::new(&lift(0), vec![lift(2)], 4).add(&TruncSeries::t(&lift(0), 4));
        let b = TruncSeries::new(&lift(0), vec![lift(3)], 4);
        let s = pf.eval_series(&[a, b]);
        // At t = 0: 4 + 12 + 3 = 19 = 5 mod 7.
        assert_eq!(s.coeff(0), lift(5));
        // d/dt at 0: 2*x0 + 2*x1 = 4 + 6 = 10 = 3 mod 7.
        assert_eq!(s.coeff(1), lift(3));
    }
}
