//! Typed, validated curve models. `load_model` converts a raw data file
//! into checked structures, re-proving on every load: homogeneity and shape
//! of the equations, membership of cusps and table points, the involution
//! identities (W² = μI, ideal preservation, the trace/quotient-genus
//! relation), marked-point claims on elliptic quotients, and the shapes of
//! all divisor data. Every violated claim is collected into a single
//! validation error.

use exactalg::{Field, Mat, Poly, QuadIrr};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::data::{self, RawDivTerm, RawModel, RawQuotient};
use crate::ecpoint::Weierstrass;
use crate::error::{Error, Issue, Result};
use crate::mpoly::{parse_poly, parse_rational, MPoly};

/// A named Atkin–Lehner-type involution acting by a linear matrix with
/// W² = μI, μ = ν². The action on regular differentials is ω ↦ σ·(Wᵀ/ν)ω.
#[derive(Debug, Clone)]
pub struct Involution {
    pub name: String,
    pub matrix: Mat<BigRational>,
    pub mu: i64,
    pub nu: i64,
    /// Differential sign; absent where the hyperelliptic companion crate
    /// owns the differential computation.
    pub sigma: Option<i64>,
    pub quotient_genus: usize,
}

/// The validated curve: equations, weights, cusps, involutions.
#[derive(Debug, Clone)]
pub struct CurveModel {
    pub level: u32,
    /// Number of projective coordinates.
    pub n: usize,
    pub genus: usize,
    /// Genus of the quotient by the full relevant involution group.
    pub quotient_genus: usize,
    pub weights: Vec<usize>,
    pub equations: Vec<MPoly<BigRational>>,
    pub cusps: Vec<Vec<BigRational>>,
    pub involutions: Vec<Involution>,
}

/// A point with coordinates in Q or a quadratic field Q(√d).
#[derive(Debug, Clone)]
pub struct QuadraticPoint {
    pub name: String,
    /// 0 for rational points, else the squarefree field discriminant d.
    pub disc: i64,
    /// Projective coordinates, denominators cleared, content 1.
    pub coords: Vec<QuadIrr>,
    pub cm: Option<i64>,
    /// Involutions w with w(P) = conjugate(P) (projectively).
    pub qcurve: Vec<String>,
    /// Involutions fixing P.
    pub fixed_by: Vec<String>,
    pub note: Option<String>,
}

impl QuadraticPoint {
    pub fn is_rational(&self) -> bool {
        self.disc == 0
    }

    /// The Galois conjugate (identity on rational points).
    pub fn conj(&self) -> Self {
        let mut p = self.clone();
        p.coords = p.coords.iter().map(|c| c.conj()).collect();
        p
    }
}

/// One site of a divisor supported on rational data.
#[derive(Debug, Clone, PartialEq)]
pub enum DivSite {
    Cusp(usize),
    Rational(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivTerm {
    pub site: DivSite,
    pub mult: i64,
}

/// Marked-point order claim on a quotient curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkedOrder {
    Infinite,
    Torsion(u64),
    Base,
}

#[derive(Debug, Clone)]
pub struct MarkedPoint {
    pub name: String,
    pub coords: Vec<BigRational>,
    pub order: MarkedOrder,
}

/// A quotient curve in one of the two shapes the data uses.
#[derive(Debug, Clone)]
pub enum QuotientCurve {
    /// Long Weierstrass coefficients [a1, a2, a3, a4, a6].
    Elliptic { a: [BigRational; 5] },
    /// y² = f(x) with f of degree 6, ascending coefficients.
    Genus2 { f: [BigRational; 7] },
}

#[derive(Debug, Clone)]
pub struct QuotientDesc {
    pub kind: QuotientCurve,
    pub label: String,
    pub via: Vec<String>,
    pub marked: Vec<MarkedPoint>,
}

#[derive(Debug, Clone)]
pub struct TorsionGen {
    pub name: String,
    pub order: u64,
    pub divisor: Vec<DivTerm>,
}

#[derive(Debug, Clone)]
pub enum FreeGenKind {
    /// The divisor {P, conjugate(P)} of a quadratic point.
    ConjugatePair { point: QuadraticPoint },
    /// The trace of a point with coordinates in a degree-4 field: each
    /// projective coordinate is a polynomial in the generator α, reduced
    /// modulo the ascending monic `min_poly`.
    QuarticTrace {
        min_poly: Poly<BigRational>,
        coords: Vec<Poly<BigRational>>,
    },
}

#[derive(Debug, Clone)]
pub struct FreeGen {
    pub name: String,
    pub kind: FreeGenKind,
    pub base: Vec<DivTerm>,
    pub quotient_image: Option<String>,
    pub note: Option<String>,
}

/// A commuting-diagram cross-check: the expression vector of a small cycle
/// in the basis (free generators, then torsion generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IotaCheck {
    CuspPair { i: usize, j: usize, vector: Vec<i64> },
    GenPair { gen: String, vector: Vec<i64> },
}

/// Everything a level's data file provides, validated.
#[derive(Debug, Clone)]
pub struct ModelData {
    pub curve: CurveModel,
    pub quotient: QuotientDesc,
    pub second_quotient: Option<QuotientDesc>,
    pub base_divisor: Vec<DivTerm>,
    pub torsion_generators: Vec<TorsionGen>,
    pub free_generators: Vec<FreeGen>,
    /// The multiplier I in ι(R) = I·[R − base].
    pub index: i64,
    pub known_points: Vec<QuadraticPoint>,
    pub sieve_primes: Vec<u64>,
    pub iota_checks: Vec<IotaCheck>,
    pub notes: Vec<String>,
}

/// The levels with embedded model data, ascending.
pub fn levels() -> Vec<u32> {
    data::levels()
}

/// Loads and validates the embedded model for a level. Fails with the full
/// list of violated claims if the data is internally inconsistent.
pub fn load_model(level: u32) -> Result<ModelData> {
    let raw = data::raw(level)?;
    build(raw)
}

/// Loads a model from a JSON string (exercises the same validation).
pub fn load_model_from_str(text: &str) -> Result<ModelData> {
    let raw = data::raw_from_str(text)?;
    build(&raw)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn issue(issues: &mut Vec<Issue>, subject: impl Into<String>, detail: impl Into<String>) {
    issues.push(Issue { subject: subject.into(), detail: detail.into() });
}

fn build(raw: &RawModel) -> Result<ModelData> {
    let mut issues: Vec<Issue> = Vec::new();
    let level = raw.level;
    let n = raw.ambient_dim + 1;

    if raw.weights.len() != n {
        return Err(Error::Validation {
            level,
            issues: vec![Issue {
                subject: "weights".into(),
                detail: format!("expected {n} entries, found {}", raw.weights.len()),
            }],
        });
    }
    let weights = raw.weights.clone();

    // Equations: parse, homogeneity, expected shape for the genus.
    let mut equations: Vec<MPoly<BigRational>> = Vec::new();
    for (j, s) in raw.equations.iter().enumerate() {
        match parse_poly(s, n) {
            Ok(p) => {
                if p.homogeneous_degree(&weights).is_none() {
                    issue(&mut issues, format!("equation {j}"), "not homogeneous for the weights");
                }
                equations.push(p);
            }
            Err(e) => {
                return Err(Error::Validation {
                    level,
                    issues: vec![Issue {
                        subject: format!("equation {j}"),
                        detail: format!("unparseable: {e}"),
                    }],
                });
            }
        }
    }
    let degs: Vec<u32> = equations
        .iter()
        .map(|e| e.homogeneous_degree(&weights).unwrap_or(0))
        .collect();
    let shape_ok = match (raw.genus, n) {
        (2, 3) => weights == [1, 3, 1] && degs == [6],
        (3, 3) => weights == [1, 1, 1] && degs == [4],
        (4, 4) => {
            weights.iter().all(|&w| w == 1) && {
                let mut d = degs.clone();
                d.sort_unstable();
                d == [2, 3]
            }
        }
        (5, 5) => weights.iter().all(|&w| w == 1) && degs == [2, 2, 2],
        _ => false,
    };
    if !shape_ok {
        issue(
            &mut issues,
            "model shape",
            format!("genus {} with {} coordinates, weights {:?}, degrees {:?}", raw.genus, n, weights, degs),
        );
    }

    // Cusps.
    let mut cusps: Vec<Vec<BigRational>> = Vec::new();
    for (i, c) in raw.cusps.iter().enumerate() {
        match parse_point(c, n) {
            Ok(pt) => {
                if pt.iter().all(|x| x.is_zero()) {
                    issue(&mut issues, format!("cusp {i}"), "all coordinates vanish");
                }
                for (j, e) in equations.iter().enumerate() {
                    let v = e.eval(&pt);
                    if !v.is_zero() {
                        issue(
                            &mut issues,
                            format!("cusp {i}"),
                            format!("equation {j} evaluates to {v}"),
                        );
                    }
                }
                cusps.push(pt);
            }
            Err(e) => {
                issue(&mut issues, format!("cusp {i}"), format!("unparseable: {e}"));
                cusps.push(vec![BigRational::zero(); n]);
            }
        }
    }

    // Involutions.
    let mut involutions: Vec<Involution> = Vec::new();
    for rawinv in &raw.involutions {
        let name = rawinv.name.clone();
        let mut rows = Vec::new();
        let mut bad = false;
        for r in &rawinv.matrix {
            match parse_point(r, n) {
                Ok(row) => rows.push(row),
                Err(e) => {
                    issue(&mut issues, format!("involution {name}"), format!("unparseable matrix: {e}"));
                    bad = true;
                    break;
                }
            }
        }
        if bad || rows.len() != n {
            if !bad {
                issue(&mut issues, format!("involution {name}"), "matrix is not square");
            }
            continue;
        }
        let w = Mat::from_rows(rows);
        let mu = rawinv.mu;
        let nu = integer_sqrt(mu);
        match nu {
            Some(nu) if nu > 0 => {
                let wsq = w.mul(&w);
                let target = Mat::identity(&BigRational::zero(), n);
                let mut involutive = true;
                for r in 0..n {
                    for c in 0..n {
                        let expect = target.at(r, c).mul(&rat(mu));
                        if *wsq.at(r, c) != expect {
                            involutive = false;
                        }
                    }
                }
                if !involutive {
                    issue(&mut issues, format!("involution {name}"), "matrix squared is not μ·identity");
                }
                // The substituted equations must stay in the ideal.
                for (j, e) in equations.iter().enumerate() {
                    let img = e.subst_linear(&w);
                    if !in_equation_span(&img, &equations, &weights) {
                        issue(
                            &mut issues,
                            format!("involution {name}"),
                            format!("equation {j} is not preserved"),
                        );
                    }
                }
                if let Some(s) = rawinv.sigma {
                    if s != 1 && s != -1 {
                        issue(&mut issues, format!("involution {name}"), format!("sign {s} is not ±1"));
                    } else {
                        let mut tr = BigRational::zero();
                        for i in 0..n {
                            tr += w.at(i, i);
                        }
                        let lhs = rat(s).mul(&tr) / rat(nu);
                        let rhs = rat(2 * rawinv.quotient_genus as i64 - raw.genus as i64);
                        if lhs != rhs {
                            issue(
                                &mut issues,
                                format!("involution {name}"),
                                format!(
                                    "signed trace {lhs} does not match 2·{} − {}",
                                    rawinv.quotient_genus, raw.genus
                                ),
                            );
                        }
                    }
                }
                involutions.push(Involution {
                    name,
                    matrix: w,
                    mu,
                    nu,
                    sigma: rawinv.sigma,
                    quotient_genus: rawinv.quotient_genus,
                });
            }
            _ => {
                issue(&mut issues, format!("involution {name}"), format!("μ = {mu} is not a positive square"));
            }
        }
    }

    // Quotient curves.
    let quotient = parse_quotient(&raw.quotient, &mut issues);
    let second_quotient = raw.second_quotient.as_ref().map(|q| parse_quotient(q, &mut issues));

    // Divisors.
    let base_divisor = parse_divisor(&raw.base_divisor, "base divisor", &cusps, &equations, n, &mut issues);
    let base_deg: i64 = base_divisor.iter().map(|t| t.mult).sum();
    if base_deg != 2 {
        issue(&mut issues, "base divisor", format!("degree {base_deg}, expected 2"));
    }

    let mut torsion_generators = Vec::new();
    for tg in &raw.torsion_generators {
        let divisor = parse_divisor(&tg.divisor, &tg.name, &cusps, &equations, n, &mut issues);
        let deg: i64 = divisor.iter().map(|t| t.mult).sum();
        if deg != 0 {
            issue(&mut issues, format!("torsion generator {}", tg.name), format!("divisor degree {deg}, expected 0"));
        }
        if tg.order < 2 {
            issue(&mut issues, format!("torsion generator {}", tg.name), "order below 2");
        }
        torsion_generators.push(TorsionGen { name: tg.name.clone(), order: tg.order, divisor });
    }

    // Table points (parsed before free generators so point references resolve).
    let mut known_points: Vec<QuadraticPoint> = Vec::new();
    for kp in &raw.known_points {
        match parse_quadratic_point(&kp.name, kp.disc, &kp.coords, n, &weights, &mut issues) {
            Some(mut p) => {
                p.cm = kp.cm;
                p.qcurve = kp.qcurve.clone();
                p.fixed_by = kp.fixed_by.clone();
                p.note = kp.note.clone();
                for (j, e) in equations.iter().enumerate() {
                    let v = eval_quad(e, &p.coords);
                    if !v.is_zero() {
                        issue(
                            &mut issues,
                            format!("point {}", p.name),
                            format!("equation {j} evaluates to {} + {}·θ", v.a(), v.b()),
                        );
                    }
                }
                for w in &p.qcurve {
                    match involutions.iter().find(|iv| &iv.name == w) {
                        Some(iv) => {
                            if !maps_to(&iv.matrix, &p.coords, &p.conj().coords, &weights) {
                                issue(
                                    &mut issues,
                                    format!("point {}", p.name),
                                    format!("{w} does not send it to its conjugate"),
                                );
                            }
                        }
                        None => issue(
                            &mut issues,
                            format!("point {}", p.name),
                            format!("marker references unknown involution {w}"),
                        ),
                    }
                }
                for w in &p.fixed_by {
                    match involutions.iter().find(|iv| &iv.name == w) {
                        Some(iv) => {
                            if !maps_to(&iv.matrix, &p.coords, &p.coords, &weights) {
                                issue(
                                    &mut issues,
                                    format!("point {}", p.name),
                                    format!("{w} does not fix it"),
                                );
                            }
                        }
                        None => issue(
                            &mut issues,
                            format!("point {}", p.name),
                            format!("marker references unknown involution {w}"),
                        ),
                    }
                }
                known_points.push(p);
            }
            None => known_points.push(QuadraticPoint {
                name: kp.name.clone(),
                disc: 0,
                coords: vec![QuadIrr::from_i64(0); n],
                cm: kp.cm,
                qcurve: Vec::new(),
                fixed_by: Vec::new(),
                note: kp.note.clone(),
            }),
        }
    }

    // Free generators.
    let mut free_generators = Vec::new();
    for fg in &raw.free_generators {
        let base = parse_divisor(&fg.base_divisor, &fg.name, &cusps, &equations, n, &mut issues);
        let base_deg: i64 = base.iter().map(|t| t.mult).sum();
        let kind = match fg.kind.as_str() {
            "conjugate_pair" => {
                if base_deg != 2 {
                    issue(&mut issues, format!("generator {}", fg.name), format!("base degree {base_deg}, expected 2"));
                }
                let point = if let Some(name) = &fg.point_ref {
                    match known_points.iter().find(|p| &p.name == name) {
                        Some(p) if !p.is_rational() => Some(p.clone()),
                        Some(_) => {
                            issue(&mut issues, format!("generator {}", fg.name), format!("referenced point {name} is rational"));
                            None
                        }
                        None => {
                            issue(&mut issues, format!("generator {}", fg.name), format!("references unknown point {name}"));
                            None
                        }
                    }
                } else {
                    match (fg.disc, &fg.coords) {
                        (Some(d), Some(coords)) => {
                            let p = parse_quadratic_point(&fg.name, Some(d), coords, n, &weights, &mut issues);
                            if let Some(p) = &p {
                                for (j, e) in equations.iter().enumerate() {
                                    let v = eval_quad(e, &p.coords);
                                    if !v.is_zero() {
                                        issue(
                                            &mut issues,
                                            format!("generator {}", fg.name),
                                            format!("equation {j} evaluates to {} + {}·θ", v.a(), v.b()),
                                        );
                                    }
                                }
                            }
                            p
                        }
                        _ => {
                            issue(&mut issues, format!("generator {}", fg.name), "conjugate pair without coordinates or point reference");
                            None
                        }
                    }
                };
                point.map(|point| FreeGenKind::ConjugatePair { point })
            }
            "quartic_trace" => {
                if base_deg != 4 {
                    issue(&mut issues, format!("generator {}", fg.name), format!("base degree {base_deg}, expected 4"));
                }
                parse_quartic_trace(fg, n, &equations, &mut issues)
            }
            other => {
                issue(&mut issues, format!("generator {}", fg.name), format!("unknown kind {other:?}"));
                None
            }
        };
        if let Some(img) = &fg.quotient_image {
            let found = quotient.marked.iter().any(|m| &m.name == img);
            if !found {
                issue(&mut issues, format!("generator {}", fg.name), format!("quotient image {img} is not a marked point"));
            }
        }
        if let Some(kind) = kind {
            free_generators.push(FreeGen {
                name: fg.name.clone(),
                kind,
                base,
                quotient_image: fg.quotient_image.clone(),
                note: fg.note.clone(),
            });
        }
    }

    // Commuting-diagram checks: shape only (the vectors are consumed by the
    // sieve, which re-verifies them mod p).
    let rank = free_generators.len() + torsion_generators.len();
    let mut iota_checks = Vec::new();
    for (k, ic) in raw.iota_checks.iter().enumerate() {
        if ic.vector.len() != rank {
            issue(&mut issues, format!("iota check {k}"), format!("vector length {}, expected {rank}", ic.vector.len()));
            continue;
        }
        match ic.kind.as_str() {
            "cusp_pair" => match (ic.i, ic.j) {
                (Some(i), Some(j)) if i < cusps.len() && j < cusps.len() => {
                    iota_checks.push(IotaCheck::CuspPair { i, j, vector: ic.vector.clone() });
                }
                _ => issue(&mut issues, format!("iota check {k}"), "cusp indices out of range"),
            },
            "gen_pair" => match &ic.gen {
                Some(g) if free_generators.iter().any(|f| &f.name == g) => {
                    iota_checks.push(IotaCheck::GenPair { gen: g.clone(), vector: ic.vector.clone() });
                }
                Some(g) => issue(&mut issues, format!("iota check {k}"), format!("unknown generator {g}")),
                None => issue(&mut issues, format!("iota check {k}"), "missing generator name"),
            },
            other => issue(&mut issues, format!("iota check {k}"), format!("unknown kind {other:?}")),
        }
    }

    if raw.index_i < 1 {
        issue(&mut issues, "index", format!("multiplier {} below 1", raw.index_i));
    }
    if raw.sieve_primes.is_empty() {
        issue(&mut issues, "sieve primes", "empty list");
    }

    if !issues.is_empty() {
        return Err(Error::Validation { level, issues });
    }

    Ok(ModelData {
        curve: CurveModel {
            level,
            n,
            genus: raw.genus,
            quotient_genus: raw.quotient_genus,
            weights,
            equations,
            cusps,
            involutions,
        },
        quotient,
        second_quotient,
        base_divisor,
        torsion_generators,
        free_generators,
        index: raw.index_i,
        known_points,
        sieve_primes: raw.sieve_primes.clone(),
        iota_checks,
        notes: raw.notes.clone(),
    })
}

fn parse_point(strings: &[String], n: usize) -> Result<Vec<BigRational>> {
    if strings.len() != n {
        return Err(Error::Data(format!("expected {n} coordinates, found {}", strings.len())));
    }
    strings.iter().map(|s| parse_rational(s)).collect()
}

/// Floor-free integer square root check: Some(ν) iff μ = ν² with ν ≥ 0.
fn integer_sqrt(mu: i64) -> Option<i64> {
    if mu < 0 {
        return None;
    }
    let r = (mu as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == mu {
            return Some(c);
        }
    }
    None
}

/// Membership of a weighted-homogeneous polynomial in the degree-matching
/// span of the model equations times monomials.
pub fn in_equation_span(
    target: &MPoly<BigRational>,
    eqs: &[MPoly<BigRational>],
    weights: &[usize],
) -> bool {
    if target.is_zero() {
        return true;
    }
    let Some(d) = target.homogeneous_degree(weights) else {
        return false;
    };
    let n = target.nvars();
    let zero = BigRational::zero();
    let mut candidates: Vec<MPoly<BigRational>> = Vec::new();
    for e in eqs {
        let Some(de) = e.homogeneous_degree(weights) else { continue };
        if de > d {
            continue;
        }
        for mono in monomials_of_weighted_degree(n, weights, d - de) {
            let m = MPoly::from_terms(n, &zero, vec![(mono, BigRational::one())]);
            candidates.push(m.mul(e));
        }
    }
    if candidates.is_empty() {
        return false;
    }
    // Index the monomials of degree d and solve the linear system.
    let mut monos: Vec<crate::mpoly::Exps> = monomials_of_weighted_degree(n, weights, d);
    monos.sort();
    let index = |e: &crate::mpoly::Exps| monos.binary_search(e).expect("degree-d monomial");
    let rows = monos.len();
    let mut cols: Vec<Vec<BigRational>> = vec![vec![zero.clone(); candidates.len()]; rows];
    for (c, cand) in candidates.iter().enumerate() {
        for (e, coeff) in cand.terms() {
            cols[index(e)][c] = coeff.clone();
        }
    }
    let mut rhs = vec![zero.clone(); rows];
    for (e, coeff) in target.terms() {
        rhs[index(e)] = coeff.clone();
    }
    let a = Mat::from_rows(cols);
    a.solve(&rhs).is_some()
}

/// All exponent vectors of weighted degree exactly `d`.
fn monomials_of_weighted_degree(n: usize, weights: &[usize], d: u32) -> Vec<crate::mpoly::Exps> {
    let mut out = Vec::new();
    let mut cur = crate::mpoly::Exps::from_elem(0, n);
    fn rec(
        i: usize,
        rem: u32,
        n: usize,
        weights: &[usize],
        cur: &mut crate::mpoly::Exps,
        out: &mut Vec<crate::mpoly::Exps>,
    ) {
        if i == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i] as u32;
        let maxe = rem / w;
        for e in 0..=maxe {
            cur[i] = e as u8;
            rec(i + 1, rem - e * w, n, weights, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, n, weights, &mut cur, &mut out);
    out
}

fn parse_quotient(raw: &RawQuotient, issues: &mut Vec<Issue>) -> QuotientDesc {
    let subject = format!("quotient {}", raw.label);
    let mut marked = Vec::new();
    let kind = match raw.kind.as_str() {
        "elliptic" => {
            let a: Option<Vec<BigRational>> = raw
                .a_invariants
                .as_ref()
                .and_then(|v| if v.len() == 5 { v.iter().map(|s| parse_rational(s).ok()).collect() } else { None });
            match a {
                Some(v) => {
                    let arr: [BigRational; 5] = v.try_into().expect("length checked");
                    let e = Weierstrass::new(arr.clone());
                    for mp in &raw.marked_points {
                        let coords: Option<Vec<BigRational>> =
                            mp.coords.iter().map(|s| parse_rational(s).ok()).collect();
                        match coords {
                            Some(c) if c.len() == 3 && c[2].is_one() => {
                                let pt = Some((c[0].clone(), c[1].clone()));
                                if !e.on_curve(&pt) {
                                    issue(issues, &subject, format!("marked point {} misses the curve", mp.name));
                                }
                                let order = match mp.order {
                                    0 => MarkedOrder::Infinite,
                                    -1 => MarkedOrder::Base,
                                    o if o > 0 => {
                                        if !e.has_exact_order(&pt, o as u64) {
                                            issue(
                                                issues,
                                                &subject,
                                                format!("marked point {} does not have order {o}", mp.name),
                                            );
                                        }
                                        MarkedOrder::Torsion(o as u64)
                                    }
                                    o => {
                                        issue(issues, &subject, format!("marked point {} has invalid order {o}", mp.name));
                                        MarkedOrder::Infinite
                                    }
                                };
                                marked.push(MarkedPoint { name: mp.name.clone(), coords: c, order });
                            }
                            _ => issue(issues, &subject, format!("marked point {} is malformed", mp.name)),
                        }
                    }
                    Some(QuotientCurve::Elliptic { a: arr })
                }
                None => {
                    issue(issues, &subject, "elliptic kind without 5 coefficients");
                    None
                }
            }
        }
        "genus2" => {
            let f: Option<Vec<BigRational>> = raw
                .f
                .as_ref()
                .and_then(|v| if v.len() == 7 { v.iter().map(|s| parse_rational(s).ok()).collect() } else { None });
            match f {
                Some(v) => {
                    let arr: [BigRational; 7] = v.try_into().expect("length checked");
                    for mp in &raw.marked_points {
                        let coords: Option<Vec<BigRational>> =
                            mp.coords.iter().map(|s| parse_rational(s).ok()).collect();
                        match coords {
                            Some(c) if c.len() == 3 => {
                                // y² = Σ f_i x^i z^(6−i), weights (1, 3, 1).
                                let mut rhs = BigRational::zero();
                                for (i, fi) in arr.iter().enumerate() {
                                    let term = fi
                                        .mul(&pow_rat(&c[0], i as u32))
                                        .mul(&pow_rat(&c[2], 6 - i as u32));
                                    rhs = rhs.add(&term);
                                }
                                if &c[1] * &c[1] != rhs {
                                    issue(issues, &subject, format!("marked point {} misses the curve", mp.name));
                                }
                                let order = match mp.order {
                                    0 => MarkedOrder::Infinite,
                                    -1 => MarkedOrder::Base,
                                    o => {
                                        issue(
                                            issues,
                                            &subject,
                                            format!("marked point {} claims order {o}, not checkable here", mp.name),
                                        );
                                        MarkedOrder::Infinite
                                    }
                                };
                                marked.push(MarkedPoint { name: mp.name.clone(), coords: c, order });
                            }
                            _ => issue(issues, &subject, format!("marked point {} is malformed", mp.name)),
                        }
                    }
                    Some(QuotientCurve::Genus2 { f: arr })
                }
                None => {
                    issue(issues, &subject, "genus-2 kind without 7 coefficients");
                    None
                }
            }
        }
        other => {
            issue(issues, &subject, format!("unknown kind {other:?}"));
            None
        }
    };
    QuotientDesc {
        kind: kind.unwrap_or(QuotientCurve::Elliptic {
            a: [(); 5].map(|_| BigRational::zero()),
        }),
        label: raw.label.clone(),
        via: raw.via.clone(),
        marked,
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

fn parse_divisor(
    terms: &[RawDivTerm],
    subject: &str,
    cusps: &[Vec<BigRational>],
    equations: &[MPoly<BigRational>],
    n: usize,
    issues: &mut Vec<Issue>,
) -> Vec<DivTerm> {
    let mut out = Vec::new();
    for (k, t) in terms.iter().enumerate() {
        match (&t.cusp, &t.coords) {
            (Some(i), None) => {
                if *i < cusps.len() {
                    out.push(DivTerm { site: DivSite::Cusp(*i), mult: t.mult });
                } else {
                    issue(issues, subject, format!("term {k} references cusp {i} out of range"));
                }
            }
            (None, Some(c)) => match parse_point(c, n) {
                Ok(pt) => {
                    for (j, e) in equations.iter().enumerate() {
                        if !e.eval(&pt).is_zero() {
                            issue(issues, subject, format!("term {k} point misses equation {j}"));
                        }
                    }
                    out.push(DivTerm { site: DivSite::Rational(pt), mult: t.mult });
                }
                Err(e) => issue(issues, subject, format!("term {k} unparseable: {e}")),
            },
            _ => issue(issues, subject, format!("term {k} must name a cusp or coordinates")),
        }
    }
    out
}

/// Parses a point given as pairs (a, b) meaning a + b·θ with θ² = disc,
/// clears denominators and removes content (weight-aware), and returns it.
/// Emits issues instead of failing so the caller collects everything.
fn parse_quadratic_point(
    name: &str,
    disc: Option<i64>,
    coords: &[[String; 2]],
    n: usize,
    weights: &[usize],
    issues: &mut Vec<Issue>,
) -> Option<QuadraticPoint> {
    if coords.len() != n {
        issue(issues, format!("point {name}"), format!("expected {n} coordinates, found {}", coords.len()));
        return None;
    }
    let d = disc.unwrap_or(0);
    if disc.is_some() {
        if d == 0 || integer_sqrt(d).is_some() {
            issue(issues, format!("point {name}"), format!("discriminant {d} is not a non-square"));
            return None;
        }
    }
    let mut parsed: Vec<(BigRational, BigRational)> = Vec::new();
    for (i, [a, b]) in coords.iter().enumerate() {
        match (parse_rational(a), parse_rational(b)) {
            (Ok(a), Ok(b)) => {
                if disc.is_none() && !b.is_zero() {
                    issue(issues, format!("point {name}"), format!("coordinate {i} has a θ part but no discriminant"));
                    return None;
                }
                parsed.push((a, b));
            }
            _ => {
                issue(issues, format!("point {name}"), format!("coordinate {i} unparseable"));
                return None;
            }
        }
    }
    let cleared = clear_and_reduce(&parsed, weights);
    let coords = cleared
        .into_iter()
        .map(|(a, b)| {
            if b.is_zero() {
                QuadIrr::from_rational(a)
            } else {
                QuadIrr::new(a, b, BigInt::from(d))
            }
        })
        .collect();
    Some(QuadraticPoint {
        name: name.to_string(),
        disc: d,
        coords,
        cm: None,
        qcurve: Vec::new(),
        fixed_by: Vec::new(),
        note: None,
    })
}

/// Scales projective coordinates by λ (coordinate i by λ^{w_i}) so that all
/// entries are integers with no common weighted content.
fn clear_and_reduce(
    coords: &[(BigRational, BigRational)],
    weights: &[usize],
) -> Vec<(BigRational, BigRational)> {
    // λ = lcm of all denominators clears every entry for any weights ≥ 1.
    let mut lcm = BigInt::one();
    for (a, b) in coords {
        lcm = lcm.lcm(a.denom());
        lcm = lcm.lcm(b.denom());
    }
    let scale = |x: &BigRational, w: usize| -> BigRational {
        let mut f = BigRational::one();
        for _ in 0..w {
            f = f.mul(&BigRational::from_integer(lcm.clone()));
        }
        x.mul(&f)
    };
    let mut ints: Vec<(BigInt, BigInt)> = coords
        .iter()
        .zip(weights)
        .map(|((a, b), &w)| {
            let sa = scale(a, w);
            let sb = scale(b, w);
            debug_assert!(sa.is_integer() && sb.is_integer());
            (sa.to_integer(), sb.to_integer())
        })
        .collect();
    // Strip weighted content: divide coordinate i by c^{w_i} while possible.
    'outer: loop {
        let mut g = BigInt::zero();
        for (a, b) in &ints {
            g = g.gcd(a);
            g = g.gcd(b);
        }
        if g <= BigInt::one() {
            break;
        }
        // Try each prime factor of the plain gcd as a weighted content.
        let mut f = g.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= f {
            while (&f % &p).is_zero() {
                if divides_weighted(&ints, &p, weights) {
                    apply_weighted_division(&mut ints, &p, weights);
                    continue 'outer;
                }
                f = f / &p;
            }
            p += 1;
        }
        if f > BigInt::one() && divides_weighted(&ints, &f, weights) {
            apply_weighted_division(&mut ints, &f, weights);
            continue;
        }
        break;
    }
    ints.into_iter()
        .map(|(a, b)| (BigRational::from_integer(a), BigRational::from_integer(b)))
        .collect()
}

fn divides_weighted(ints: &[(BigInt, BigInt)], c: &BigInt, weights: &[usize]) -> bool {
    ints.iter().zip(weights).all(|((a, b), &w)| {
        let cw = num_traits::pow::pow(c.clone(), w);
        (a % &cw).is_zero() && (b % &cw).is_zero()
    })
}

fn apply_weighted_division(ints: &mut [(BigInt, BigInt)], c: &BigInt, weights: &[usize]) {
    for ((a, b), &w) in ints.iter_mut().zip(weights) {
        let cw = num_traits::pow::pow(c.clone(), w);
        *a = &*a / &cw;
        *b = &*b / &cw;
    }
}

/// Evaluates an equation with rational coefficients at quadratic-field
/// coordinates.
pub fn eval_quad(e: &MPoly<BigRational>, coords: &[QuadIrr]) -> QuadIrr {
    let zero = QuadIrr::from_i64(0);
    let lifted = e.map_coeffs(&zero, |c| QuadIrr::from_rational(c.clone()));
    lifted.eval(coords)
}

/// Whether W·p equals q projectively (weight-aware: the scale λ read off a
/// weight-1 coordinate must match coordinate i through λ^{w_i}).
fn maps_to(w: &Mat<BigRational>, p: &[QuadIrr], q: &[QuadIrr], weights: &[usize]) -> bool {
    let n = p.len();
    let zero = QuadIrr::from_i64(0);
    let mut image: Vec<QuadIrr> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = zero.clone();
        for j in 0..n {
            let c = QuadIrr::from_rational(w.at(i, j).clone());
            acc = acc.add(&c.mul(&p[j]));
        }
        image.push(acc);
    }
    // λ from the first weight-1 coordinate where q is nonzero.
    let mut lambda: Option<QuadIrr> = None;
    for i in 0..n {
        if weights[i] == 1 && !q[i].is_zero() {
            match image[i].div(&q[i]) {
                Some(l) => lambda = Some(l),
                None => return false,
            }
            break;
        }
    }
    let Some(lambda) = lambda else {
        return false;
    };
    if lambda.is_zero() {
        return false;
    }
    for i in 0..n {
        let mut lw = lambda.one_like();
        for _ in 0..weights[i] {
            lw = lw.mul(&lambda);
        }
        if image[i] != lw.mul(&q[i]) {
            return false;
        }
    }
    true
}

fn parse_quartic_trace(
    fg: &crate::data::RawFreeGen,
    n: usize,
    equations: &[MPoly<BigRational>],
    issues: &mut Vec<Issue>,
) -> Option<FreeGenKind> {
    let subject = format!("generator {}", fg.name);
    let (Some(mp), Some(qc)) = (&fg.min_poly, &fg.quartic_coords) else {
        issue(issues, &subject, "quartic trace without minimal polynomial or coordinates");
        return None;
    };
    if mp.len() != 5 {
        issue(issues, &subject, "minimal polynomial must have 5 ascending coefficients");
        return None;
    }
    let mpc: Option<Vec<BigRational>> = mp.iter().map(|s| parse_rational(s).ok()).collect();
    let Some(mpc) = mpc else {
        issue(issues, &subject, "minimal polynomial unparseable");
        return None;
    };
    if !mpc[4].is_one() {
        issue(issues, &subject, "minimal polynomial is not monic");
        return None;
    }
    let min_poly = Poly::new(mpc);
    if qc.len() != n {
        issue(issues, &subject, format!("expected {n} coordinate rows, found {}", qc.len()));
        return None;
    }
    let mut coords: Vec<Poly<BigRational>> = Vec::new();
    for row in qc {
        if row.len() != 4 {
            issue(issues, &subject, "coordinate rows must have 4 ascending entries");
            return None;
        }
        let vals: Option<Vec<BigRational>> = row.iter().map(|s| parse_rational(s).ok()).collect();
        match vals {
            Some(v) => coords.push(Poly::new(v)),
            None => {
                issue(issues, &subject, "coordinate row unparseable");
                return None;
            }
        }
    }
    // Verify every equation vanishes modulo the minimal polynomial.
    for (j, e) in equations.iter().enumerate() {
        let mut acc = Poly::zero(&BigRational::zero());
        for (exps, c) in e.terms() {
            let mut term = Poly::constant(c.clone());
            for (i, &pw) in exps.iter().enumerate() {
                for _ in 0..pw {
                    term = term.mul(&coords[i]).rem(&min_poly);
                }
            }
            acc = acc.add(&term);
        }
        acc = acc.rem(&min_poly);
        if !acc.is_zero() {
            issue(issues, &subject, format!("equation {j} does not vanish modulo the minimal polynomial"));
        }
    }
    Some(FreeGenKind::QuarticTrace { min_poly, coords })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration_counts() {
        // Degree 2 in 3 unweighted variables: 6 monomials.
        assert_eq!(monomials_of_weighted_degree(3, &[1, 1, 1], 2).len(), 6);
        // Weighted (1,3,1) degree 6: e1 ∈ {0,1,2} with the rest free.
        let ms = monomials_of_weighted_degree(3, &[1, 3, 1], 6);
        assert!(ms.iter().all(|e| e[0] as u32 + 3 * e[1] as u32 + e[2] as u32 == 6));
        assert_eq!(ms.len(), 7 + 4 + 1);
    }

    #[test]
    fn span_membership_detects_scalar_multiples_and_rejects_outsiders() {
        let e1 = parse_poly("x0^2 + x1*x2", 3).unwrap();
        let e2 = parse_poly("x0*x1 - x2^2", 3).unwrap();
        let eqs = vec![e1.clone(), e2.clone()];
        let w = [1usize, 1, 1];
        let inside = e1.scale(&rat(3)).add(&e2.scale(&rat(-2)));
        assert!(in_equation_span(&inside, &eqs, &w));
        let outside = parse_poly("x0^2", 3).unwrap();
        assert!(!in_equation_span(&outside, &eqs, &w));
        // A degree-3 combination with monomial multipliers.
        let cubic = parse_poly("x2", 3).unwrap().mul(&e1);
        assert!(in_equation_span(&cubic, &eqs, &w));
    }

    #[test]
    fn integer_sqrt_detects_squares() {
        assert_eq!(integer_sqrt(9), Some(3));
        assert_eq!(integer_sqrt(1), Some(1));
        assert_eq!(integer_sqrt(8), None);
        assert_eq!(integer_sqrt(-4), None);
    }

    #[test]
    fn weighted_content_clearing() {
        // (1/2, 1/8, 1) with weights (1, 3, 1): λ = 2 gives (1, 1, 2).
        let coords = vec![
            (BigRational::new(1.into(), 2.into()), BigRational::zero()),
            (BigRational::new(1.into(), 8.into()), BigRational::zero()),
            (BigRational::one(), BigRational::zero()),
        ];
        let out = clear_and_reduce(&coords, &[1, 3, 1]);
        assert_eq!(out[0].0, rat(1));
        assert_eq!(out[1].0, rat(1));
        assert_eq!(out[2].0, rat(2));
        // Weighted content: (2, 8, 2) reduces by c = 2 to (1, 1, 1).
        let coords2 = vec![
            (rat(2), BigRational::zero()),
            (rat(8), BigRational::zero()),
            (rat(2), BigRational::zero()),
        ];
        let out2 = clear_and_reduce(&coords2, &[1, 3, 1]);
        assert_eq!(out2[0].0, rat(1));
        assert_eq!(out2[1].0, rat(1));
        assert_eq!(out2[2].0, rat(1));
    }
}
