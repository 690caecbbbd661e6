//! Reduction of a validated model modulo a prime, behind a good-reduction
//! screen. A prime is accepted only if the equations stay primitive, every
//! involution stays invertible, the point counts over the degree-1 and
//! degree-2 extensions respect the genus bound, and the reduced scheme is
//! smooth (certified by ideal triviality of the singular locus in every
//! affine chart, or, for the hyperelliptic model, by a squarefree sextic).
//! Quadratic points reduce to pairs of rational points or to a degree-2
//! place depending on how the discriminant behaves mod p.

use std::sync::Arc;

use exactalg::{
    decode_to_subfield, element_degree, field_make, is_prime_u64, FFElem, Field, FieldDesc,
    FiniteField, Mat, Poly,
};
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerate;
use crate::error::{Error, RejectReason, Result};
use crate::groebner::ideal_is_trivial;
use crate::model::{ModelData, QuadraticPoint};
use crate::mpoly::{det_mpoly, MPoly};

/// Work cap for the per-chart ideal-triviality certificates.
const GROEBNER_CAP: usize = 50_000;

/// An involution matrix reduced mod p (μ stays invertible).
#[derive(Debug, Clone)]
pub struct ReducedInvolution {
    pub name: String,
    pub matrix: Mat<FFElem>,
    pub mu: i64,
    pub nu: i64,
    pub sigma: Option<i64>,
    pub quotient_genus: usize,
}

/// The model over F_p, accepted by the good-reduction screen.
#[derive(Debug, Clone)]
pub struct ReducedCurve {
    pub level: u32,
    pub p: u64,
    pub n: usize,
    pub genus: usize,
    pub weights: Vec<usize>,
    pub fp: Arc<FieldDesc>,
    pub equations: Vec<MPoly<FFElem>>,
    pub involutions: Vec<ReducedInvolution>,
    /// Point counts over F_p and F_{p²}, certified during the screen.
    pub counts: [u64; 2],
    /// For the hyperelliptic model: the reduced sextic f with y² = f(x).
    pub hyper_sextic: Option<Poly<FFElem>>,
}

impl ReducedCurve {
    /// Bare-bones constructor for unit tests of the enumeration machinery.
    #[cfg(test)]
    pub(crate) fn for_tests(
        p: u64,
        equations: Vec<MPoly<FFElem>>,
        weights: Vec<usize>,
        fp: Arc<FieldDesc>,
    ) -> Self {
        let n = weights.len();
        ReducedCurve {
            level: 0,
            p,
            n,
            genus: 0,
            weights,
            fp,
            equations,
            involutions: Vec::new(),
            counts: [0, 0],
            hyper_sextic: None,
        }
    }
}

/// Reduces the model mod p and runs the screen. An `Err` with
/// `BadReduction` carries the precise reason the prime was refused.
pub fn reduce_model(model: &ModelData, p: u64) -> Result<ReducedCurve> {
    if !is_prime_u64(p) {
        return Err(Error::Data(format!("{p} is not prime")));
    }
    let level = model.curve.level;
    let reject = |reason: RejectReason| Error::BadReduction { level, p, reason };
    let fp = field_make(p, 1)?;
    let like = FFElem::from_u64(&fp, 0);

    // Equations: clear to primitive integer form, then reduce. Primitivity
    // guarantees a nonzero reduction; the structural checks come after.
    let mut equations: Vec<MPoly<FFElem>> = Vec::new();
    for (index, e) in model.curve.equations.iter().enumerate() {
        let prim = primitive_integer_poly(e);
        let red = prim.map_coeffs(&like, |c| like.from_bigint_like(c.numer()));
        if red.is_zero() {
            return Err(reject(RejectReason::EquationDegenerate { index }));
        }
        equations.push(red);
    }

    // Involutions.
    let mut involutions: Vec<ReducedInvolution> = Vec::new();
    for inv in &model.curve.involutions {
        if inv.mu.rem_euclid(p as i64) == 0 {
            return Err(reject(RejectReason::InvolutionDegenerate { name: inv.name.clone() }));
        }
        let n = model.curve.n;
        let mut rows: Vec<Vec<FFElem>> = Vec::new();
        for r in 0..n {
            let mut row = Vec::new();
            for c in 0..n {
                let entry = inv.matrix.at(r, c);
                let den = like.from_bigint_like(entry.denom());
                let num = like.from_bigint_like(entry.numer());
                match den.inv() {
                    Some(di) => row.push(num.mul(&di)),
                    None => {
                        return Err(reject(RejectReason::InvolutionDegenerate {
                            name: inv.name.clone(),
                        }))
                    }
                }
            }
            rows.push(row);
        }
        let matrix = Mat::from_rows(rows);
        let msq = matrix.mul(&matrix);
        let mubar = like.from_i64_like(inv.mu);
        for r in 0..n {
            for c in 0..n {
                let expect = if r == c { mubar.clone() } else { like.zero_like() };
                assert!(
                    *msq.at(r, c) == expect,
                    "involution square identity must survive reduction"
                );
            }
        }
        involutions.push(ReducedInvolution {
            name: inv.name.clone(),
            matrix,
            mu: inv.mu,
            nu: inv.nu,
            sigma: inv.sigma,
            quotient_genus: inv.quotient_genus,
        });
    }

    // Hyperelliptic shape: needs p odd and a squarefree sextic.
    let weighted = model.curve.weights.iter().any(|&w| w != 1);
    let hyper_sextic = if weighted {
        if p == 2 {
            return Err(reject(RejectReason::HyperellipticDegenerate {
                why: "the residue characteristic divides 2y".into(),
            }));
        }
        let f = hyperelliptic_sextic(&equations[0]).ok_or_else(|| {
            reject(RejectReason::HyperellipticDegenerate {
                why: "the equation is not of the shape y² − f(x, z)".into(),
            })
        })?;
        let g = f.gcd(&f.derivative());
        if g.deg() >= 1 {
            return Err(reject(RejectReason::HyperellipticDegenerate {
                why: "the reduced sextic has a repeated root".into(),
            }));
        }
        Some(f)
    } else {
        None
    };

    let mut rc = ReducedCurve {
        level,
        p,
        n: model.curve.n,
        genus: model.curve.genus,
        weights: model.curve.weights.clone(),
        fp: fp.clone(),
        equations,
        involutions,
        counts: [0, 0],
        hyper_sextic,
    };

    // Point-count screen over F_p and F_{p²}.
    let g = model.curve.genus as u64;
    for k in 1..=2usize {
        let count = enumerate::count_over(&rc, k)?;
        let qk = p.pow(k as u32);
        let half = (4 * g * g * qk).sqrt();
        let upper = qk + 1 + half;
        let lower = (qk + 1).saturating_sub(half);
        if count > upper {
            return Err(reject(RejectReason::CountBound { k, count, bound: upper }));
        }
        if count < lower {
            return Err(reject(RejectReason::CountBound { k, count, bound: lower }));
        }
        rc.counts[k - 1] = count;
    }

    // Smoothness certificate chart by chart (the hyperelliptic shape is
    // already covered by the squarefree check).
    if !weighted {
        let n = rc.n;
        let m = rc.equations.len();
        for chart in 0..n {
            let affine: Vec<MPoly<FFElem>> = rc
                .equations
                .iter()
                .map(|e| e.set_var_const(chart, &like.one_like()))
                .collect();
            let cols: Vec<usize> = (0..n).filter(|&i| i != chart).collect();
            let jac: Vec<Vec<MPoly<FFElem>>> = affine
                .iter()
                .map(|e| cols.iter().map(|&i| e.partial(i)).collect())
                .collect();
            let mut gens = affine.clone();
            for combo in (0..cols.len()).combinations(m) {
                let minor: Vec<Vec<MPoly<FFElem>>> = jac
                    .iter()
                    .map(|row| combo.iter().map(|&ci| row[ci].clone()).collect())
                    .collect();
                let d = det_mpoly(&minor);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
            match ideal_is_trivial(&gens, GROEBNER_CAP) {
                Ok(true) => {}
                Ok(false) => {
                    let witness = singular_witness(&rc)?;
                    return Err(reject(RejectReason::Singular { chart, witness }));
                }
                Err(_) => {
                    return Err(reject(RejectReason::Inconclusive {
                        why: format!("smoothness certificate exceeded its work cap in chart {chart}"),
                    }))
                }
            }
        }
    }

    Ok(rc)
}

/// Clears denominators and content so the coefficients are coprime integers.
fn primitive_integer_poly(e: &MPoly<BigRational>) -> MPoly<BigRational> {
    let mut lcm = BigInt::one();
    for (_, c) in e.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut gcd = BigInt::zero();
    let scaled: Vec<(crate::mpoly::Exps, BigInt)> = e
        .terms()
        .iter()
        .map(|(ex, c)| {
            let v = (c * BigRational::from_integer(lcm.clone())).to_integer();
            gcd = gcd.gcd(&v);
            (ex.clone(), v)
        })
        .collect();
    if gcd.is_zero() {
        return e.clone();
    }
    let terms = scaled
        .into_iter()
        .map(|(ex, v)| (ex, BigRational::from_integer(v / &gcd)))
        .collect();
    MPoly::from_terms(e.nvars(), &BigRational::zero(), terms)
}

/// Extracts f from an equation of the shape c·y² − (sextic in x, z) with
/// weights (1, 3, 1), as a monic-normalized univariate in x at z = 1.
fn hyperelliptic_sextic(eq: &MPoly<FFElem>) -> Option<Poly<FFElem>> {
    let like = eq.like().clone();
    if eq.degree_in(1) != 2 {
        return None;
    }
    // No cross terms linear in y.
    for (ex, _) in eq.terms() {
        if ex[1] == 1 {
            return None;
        }
    }
    let ysq = {
        let mut found: Option<FFElem> = None;
        for (ex, c) in eq.terms() {
            if ex[1] == 2 {
                if ex[0] != 0 || ex[2] != 0 {
                    return None;
                }
                found = Some(c.clone());
            }
        }
        found?
    };
    // eq = ysq·y² + R(x, z); f = −R/ysq evaluated at z = 1.
    let r = eq.set_var_const(1, &like.zero_like());
    let neg = r.scale(&ysq.inv()?.neg());
    let uni = neg.set_var_const(2, &like.one_like());
    uni.to_poly_in(0)
}

/// Looks for a rational singular point to report: on-curve points where the
/// Jacobian drops rank.
fn singular_witness(rc: &ReducedCurve) -> Result<Option<String>> {
    let m = rc.equations.len();
    let partials: Vec<Vec<MPoly<FFElem>>> = rc
        .equations
        .iter()
        .map(|e| (0..rc.n).map(|i| e.partial(i)).collect())
        .collect();
    for pt in enumerate::points_over(rc, 1)? {
        let rows: Vec<Vec<FFElem>> = partials
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&pt)).collect())
            .collect();
        let jac = Mat::from_rows(rows);
        if jac.rank() < m {
            let txt = pt
                .iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>()
                .join(":");
            return Ok(Some(format!("({txt})")));
        }
    }
    Ok(None)
}

/// Reduction of a rational or quadratic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedPoint {
    /// A rational point reduces to a single F_p point.
    One(Vec<FFElem>),
    /// The two conjugates reduce separately to F_p points (equal when the
    /// residue discs collide).
    Two(Vec<FFElem>, Vec<FFElem>),
    /// The conjugate pair reduces to one closed point of degree 2; the
    /// representative is over F_{p²}, canonical in its Frobenius orbit.
    Quadratic(Vec<FFElem>),
}

/// Reduces a point mod p. The first component of `Two` is the image of the
/// given point under the canonical square root of its discriminant, the
/// second the image of its conjugate.
pub fn reduce_point(rc: &ReducedCurve, pt: &QuadraticPoint) -> Result<ReducedPoint> {
    let p = rc.p;
    if pt.is_rational() {
        let coords: Vec<FFElem> = pt
            .coords
            .iter()
            .map(|c| c.reduce(&rc.fp))
            .collect::<std::result::Result<_, _>>()?;
        let rep = normalize_place(coords, &rc.weights)?;
        check_on_curve(rc, &rep, &rc.fp)?;
        return Ok(ReducedPoint::One(rep));
    }
    let d = pt.disc;
    if d.rem_euclid(p as i64) == 0 {
        return Err(Error::PointReduction(format!(
            "point {}: p = {p} ramifies in the coordinate field (disc {d})",
            pt.name
        )));
    }
    let like = FFElem::from_u64(&rc.fp, 0);
    let dbar = like.from_i64_like(d);
    let split = Poly::new(vec![dbar.neg(), like.zero_like(), like.one_like()])
        .roots()
        .len()
        > 0;
    if split {
        let a: Vec<FFElem> = pt
            .coords
            .iter()
            .map(|c| c.reduce(&rc.fp))
            .collect::<std::result::Result<_, _>>()?;
        let b: Vec<FFElem> = pt
            .coords
            .iter()
            .map(|c| c.reduce_conj(&rc.fp))
            .collect::<std::result::Result<_, _>>()?;
        let ra = normalize_place(a, &rc.weights)?;
        let rb = normalize_place(b, &rc.weights)?;
        check_on_curve(rc, &ra, &rc.fp)?;
        check_on_curve(rc, &rb, &rc.fp)?;
        return Ok(ReducedPoint::Two(ra, rb));
    }
    let ctx2 = field_make(p, 2)?;
    let coords: Vec<FFElem> = pt
        .coords
        .iter()
        .map(|c| c.reduce(&ctx2))
        .collect::<std::result::Result<_, _>>()?;
    let rep = normalize_place(coords, &rc.weights)?;
    check_on_curve(rc, &rep, &ctx2)?;
    let deg = rep
        .iter()
        .map(|c| element_degree(c))
        .fold(1usize, num_integer::lcm);
    if deg == 1 {
        // The quadratic structure collapses mod p: both conjugates land on
        // the same rational point.
        let down: Vec<FFElem> = rep
            .iter()
            .map(|c| decode_to_subfield(c, 1))
            .collect::<std::result::Result<_, _>>()?;
        return Ok(ReducedPoint::Two(down.clone(), down));
    }
    let img: Vec<FFElem> = rep.iter().map(|c| c.frobenius()).collect();
    let canon = if img < rep { img } else { rep };
    Ok(ReducedPoint::Quadratic(canon))
}

/// Scales projective coordinates into the cell normalization: the first
/// nonzero weight-1 coordinate becomes 1 (coordinate i is divided by
/// λ^{w_i}); a point with all weight-1 coordinates zero normalizes its
/// single high-weight coordinate to 1.
pub fn normalize_place(coords: Vec<FFElem>, weights: &[usize]) -> Result<Vec<FFElem>> {
    let lead = (0..coords.len()).find(|&i| weights[i] == 1 && !coords[i].is_zero());
    if let Some(i) = lead {
        let inv = coords[i].inv().expect("nonzero");
        let out = coords
            .iter()
            .zip(weights)
            .map(|(c, &w)| {
                let mut f = c.one_like();
                for _ in 0..w {
                    f = f.mul(&inv);
                }
                c.mul(&f)
            })
            .collect();
        return Ok(out);
    }
    let high: Vec<usize> = (0..coords.len())
        .filter(|&i| weights[i] != 1 && !coords[i].is_zero())
        .collect();
    match high.len() {
        1 => {
            let mut out: Vec<FFElem> = coords.iter().map(|c| c.zero_like()).collect();
            out[high[0]] = coords[high[0]].one_like();
            Ok(out)
        }
        0 => Err(Error::PointReduction(
            "all coordinates vanish after reduction".into(),
        )),
        _ => Err(Error::PointReduction(
            "cannot normalize: several high-weight coordinates are nonzero".into(),
        )),
    }
}

fn check_on_curve(rc: &ReducedCurve, coords: &[FFElem], ctx: &Arc<FieldDesc>) -> Result<()> {
    let like = FFElem::from_u64(ctx, 0);
    let ok = rc.equations.iter().all(|e| {
        let lifted = e.map_coeffs(&like, |c| exactalg::embed(c, ctx).expect("prime subfield embeds"));
        lifted.eval(coords).is_zero()
    });
    if ok {
        Ok(())
    } else {
        Err(Error::PointReduction(
            "reduced point does not satisfy the reduced equations".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactalg::QuadIrr;
    use num_rational::BigRational;

    fn quad(a: i64, b: i64, d: i64) -> QuadIrr {
        QuadIrr::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            BigInt::from(d),
        )
    }

    #[test]
    fn primitive_clearing_strips_denominators_and_content() {
        let e = crate::mpoly::parse_poly("1/2*x0^2 + 3/4*x1^2", 2).unwrap();
        let p = primitive_integer_poly(&e);
        let coeffs: Vec<String> = p.terms().iter().map(|(_, c)| format!("{c}")).collect();
        assert_eq!(coeffs, vec!["2", "3"]);
    }

    #[test]
    fn split_and_inert_classification_follows_the_discriminant() {
        // θ² = −7: mod 11, −7 ≡ 4 = 2², split; mod 5, −7 ≡ 3 is not a
        // square, inert. Check through a line in P² (every point lies on it).
        let model_eq = crate::mpoly::parse_poly("x0 + x1 - x2", 3).unwrap();
        for (p, expect_split) in [(11u64, true), (5u64, false)] {
            let fp = field_make(p, 1).unwrap();
            let like = FFElem::from_u64(&fp, 0);
            let eq = model_eq.map_coeffs(&like, |c| like.from_bigint_like(c.numer()));
            let rc = ReducedCurve::for_tests(p, vec![eq], vec![1, 1, 1], fp);
            // P = (θ : 1 − θ : 1) lies on x0 + x1 − x2 = 0.
            let pt = QuadraticPoint {
                name: "P".into(),
                disc: -7,
                coords: vec![quad(0, 1, -7), quad(1, -1, -7), quad(1, 0, -7)],
                cm: None,
                qcurve: vec![],
                fixed_by: vec![],
                note: None,
            };
            match reduce_point(&rc, &pt).unwrap() {
                ReducedPoint::Two(a, b) => {
                    assert!(expect_split);
                    assert_ne!(a, b, "the two square roots of 4 differ mod 11");
                }
                ReducedPoint::Quadratic(c) => {
                    assert!(!expect_split);
                    let img: Vec<FFElem> = c.iter().map(|x| x.frobenius()).collect();
                    assert!(c <= img);
                    assert_ne!(c, img);
                }
                ReducedPoint::One(_) => panic!("quadratic input cannot reduce as rational"),
            }
        }
    }

    #[test]
    fn ramified_prime_is_refused() {
        let model_eq = crate::mpoly::parse_poly("x0 + x1 - x2", 3).unwrap();
        let fp = field_make(7, 1).unwrap();
        let like = FFElem::from_u64(&fp, 0);
        let eq = model_eq.map_coeffs(&like, |c| like.from_bigint_like(c.numer()));
        let rc = ReducedCurve::for_tests(7, vec![eq], vec![1, 1, 1], fp);
        let pt = QuadraticPoint {
            name: "P".into(),
            disc: -7,
            coords: vec![quad(0, 1, -7), quad(1, -1, -7), quad(1, 0, -7)],
            cm: None,
            qcurve: vec![],
            fixed_by: vec![],
            note: None,
        };
        assert!(reduce_point(&rc, &pt).is_err());
    }

    #[test]
    fn normalization_prefers_the_first_weight_one_coordinate() {
        let fp = field_make(5, 1).unwrap();
        let e = |v: u64| FFElem::from_u64(&fp, v);
        // (2 : 3 : 4) normalizes to (1 : 3·2⁻³ : 4·2⁻¹)? Weights (1,3,1):
        // λ = 2, so x1 divides by 2³ = 8 ≡ 3, x2 by 2.
        let out = normalize_place(vec![e(2), e(3), e(4)], &[1, 3, 1]).unwrap();
        assert_eq!(out[0], e(1));
        assert_eq!(out[1], e(1));
        assert_eq!(out[2], e(2));
        // All weight-1 zero: the high-weight coordinate normalizes to 1.
        let out2 = normalize_place(vec![e(0), e(4), e(0)], &[1, 3, 1]).unwrap();
        assert_eq!(out2, vec![e(0), e(1), e(0)]);
    }
}
