//! Local power-series expansions at points of the reduced curve. The
//! expansion works in the affine chart of the point's normalization, picks
//! the lowest coordinate whose translate serves as a local parameter (the
//! Jacobian block in the remaining coordinates must be invertible), and
//! solves the remaining coordinates order by order.

use exactalg::{embed, lift_coordinates, FFElem, Field, FiniteField, TruncSeries};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::reduce::ReducedCurve;

/// A truncated expansion of the curve at a closed point.
#[derive(Debug, Clone)]
pub struct LocalExpansion {
    /// The point, in cell normalization, over F_{p^k}.
    pub center: Vec<FFElem>,
    /// Index of the coordinate normalized to 1.
    pub chart: usize,
    /// Index of the coordinate whose translate is the local parameter t.
    pub uniformizer: usize,
    /// All coordinates as series in t: entry `chart` is the constant 1,
    /// entry `uniformizer` is center + t, the rest are solved. In the
    /// weighted model the entries are the affine ratios x_i / x_chart^{w_i}.
    pub series: Vec<TruncSeries<FFElem>>,
    /// Series are valid modulo t^precision.
    pub precision: usize,
}

/// Expands the curve at `place` (coordinates over F_p or an extension, in
/// cell normalization) to the requested precision.
pub fn local_expand(rc: &ReducedCurve, place: &[FFElem], prec: usize) -> Result<LocalExpansion> {
    if prec < 2 {
        return Err(Error::Expansion("precision below 2 is useless".into()));
    }
    let n = rc.n;
    if place.len() != n {
        return Err(Error::Expansion(format!(
            "expected {n} coordinates, found {}",
            place.len()
        )));
    }
    let ctx = place
        .iter()
        .map(|c| c.ctx())
        .max_by_key(|c| c.degree())
        .expect("nonempty coordinates");
    let like = FFElem::from_u64(&ctx, 0);
    let chart = (0..n)
        .find(|&i| rc.weights[i] == 1 && !place[i].is_zero())
        .or_else(|| (0..n).find(|&i| !place[i].is_zero()))
        .ok_or_else(|| Error::Expansion("zero coordinate vector".into()))?;
    if !place[chart].is_one() {
        return Err(Error::Expansion(
            "place is not in cell normalization (chart coordinate is not 1)".into(),
        ));
    }
    let eqs: Vec<MPoly<FFElem>> = rc
        .equations
        .iter()
        .map(|e| e.map_coeffs(&like, |c| embed(c, &ctx).expect("prime subfield embeds")))
        .collect();
    let center: Vec<FFElem> = place.to_vec();
    let mut last_err: Option<exactalg::Error> = None;
    for uniformizer in (0..n).filter(|&i| i != chart) {
        let unknowns: Vec<usize> = (0..n)
            .filter(|&i| i != chart && i != uniformizer)
            .collect();
        let eval = |coords: &[TruncSeries<FFElem>]| -> Vec<TruncSeries<FFElem>> {
            eqs.iter().map(|e| e.eval_series(coords)).collect()
        };
        match lift_coordinates(&center, uniformizer, &unknowns, &eval, prec) {
            Ok(series) => {
                return Ok(LocalExpansion {
                    center,
                    chart,
                    uniformizer,
                    series,
                    precision: prec,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Expansion(format!(
        "no coordinate serves as local parameter at the point: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use exactalg::{field_make, FFElem};
    use num_rational::BigRational;

    fn reduced(p: u64, eq: &str, nvars: usize, weights: Vec<usize>) -> ReducedCurve {
        let fp = field_make(p, 1).unwrap();
        let like = FFElem::from_u64(&fp, 0);
        let q: MPoly<BigRational> = parse_poly(eq, nvars).unwrap();
        let m = q.map_coeffs(&like, |c| {
            let num = like.from_bigint_like(c.numer());
            let den = like.from_bigint_like(c.denom());
            num.mul(&den.inv().unwrap())
        });
        ReducedCurve::for_tests(p, vec![m], weights, fp)
    }

    #[test]
    fn conic_expansion_solves_the_remaining_coordinate() {
        let rc = reduced(7, "x0^2 + x1^2 - x2^2", 3, vec![1, 1, 1]);
        let fp = rc.fp.clone();
        let e = |v: u64| FFElem::from_u64(&fp, v);
        let place = vec![e(1), e(0), e(1)];
        let ex = local_expand(&rc, &place, 6).unwrap();
        assert_eq!(ex.chart, 0);
        assert_eq!(ex.uniformizer, 1);
        // Residual vanishes to full precision.
        let residual = rc.equations[0].eval_series(&ex.series);
        for i in 0..6 {
            assert!(residual.coeff(i).is_zero());
        }
        // Constant terms are the center; the uniformizer series is c + t.
        for i in 0..3 {
            assert_eq!(ex.series[i].coeff(0), place[i]);
        }
        assert!(ex.series[1].coeff(1).is_one());
        // x2 = sqrt(1 + t²) = 1 + 4t² + ... over F_7 (1/2 = 4).
        assert_eq!(ex.series[2].coeff(2), e(4));
    }

    #[test]
    fn singular_parameter_directions_are_skipped() {
        // y²z = x³ + xz² at (0:0:1): the branch is tangent to y = 0, so x
        // cannot serve as parameter but y can, and x = t² + O(t⁴).
        let rc = reduced(7, "x1^2*x2 - x0^3 - x0*x2^2", 3, vec![1, 1, 1]);
        let fp = rc.fp.clone();
        let e = |v: u64| FFElem::from_u64(&fp, v);
        let place = vec![e(0), e(0), e(1)];
        let ex = local_expand(&rc, &place, 5).unwrap();
        assert_eq!(ex.chart, 2);
        assert_eq!(ex.uniformizer, 1);
        assert!(ex.series[0].coeff(0).is_zero());
        assert!(ex.series[0].coeff(1).is_zero());
        assert!(ex.series[0].coeff(2).is_one());
        let residual = rc.equations[0].eval_series(&ex.series);
        for i in 0..5 {
            assert!(residual.coeff(i).is_zero());
        }
    }

    #[test]
    fn half_precision_prefix_agrees_with_full_precision() {
        let rc = reduced(11, "x0^2 + x1^2 - x2^2", 3, vec![1, 1, 1]);
        let fp = rc.fp.clone();
        let e = |v: u64| FFElem::from_u64(&fp, v);
        let place = vec![e(1), e(0), e(1)];
        let lo = local_expand(&rc, &place, 4).unwrap();
        let hi = local_expand(&rc, &place, 8).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                assert_eq!(lo.series[i].coeff(j), hi.series[i].coeff(j));
            }
        }
    }
}
