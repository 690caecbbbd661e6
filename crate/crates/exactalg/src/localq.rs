//! Coordinate lifting at a smooth point of a polynomial system.
//!
//! Given a point on an affine variety cut out by `k` equations in which a
//! distinguished coordinate serves as local parameter and `k` remaining
//! coordinates are unknowns, this solves for the unknowns as truncated power
//! series in the parameter, order by order. The square Jacobian block of the
//! system with respect to the unknowns must be invertible at the center;
//! it is extracted from the evaluation closure itself by first-order probes,
//! so callers only supply a way to evaluate the equations on series.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::series::TruncSeries;

/// Expands the coordinates of a variety as power series in one of them.
///
/// * `center`: coordinates of the point, one entry per variable. Entries
///   outside `unknowns` and `uniformizer` are held constant.
/// * `uniformizer`: index of the coordinate set to `center[i] + t`.
/// * `unknowns`: indices of the coordinates solved for as series in `t`.
/// * `eval`: evaluates every defining equation on a full coordinate vector
///   of series; the number of equations must equal `unknowns.len()`.
/// * `prec`: series are returned modulo `t^prec`.
///
/// Returns the full coordinate vector as series, with the unknown entries
/// satisfying every equation to precision `prec`. Fails if the center does
/// not satisfy the system or if the Jacobian block with respect to the
/// unknowns is singular there (a non-smooth configuration or a bad choice
/// of local parameter).
pub fn lift_coordinates<F, E>(
    center: &[F],
    uniformizer: usize,
    unknowns: &[usize],
    eval: &E,
    prec: usize,
) -> Result<Vec<TruncSeries<F>>>
where
    F: Field,
    E: Fn(&[TruncSeries<F>]) -> Vec<TruncSeries<F>>,
{
    assert!(prec >= 1);
    assert!(uniformizer < center.len());
    assert!(
        unknowns.iter().all(|&u| u < center.len() && u != uniformizer),
        "unknown indices must be distinct from the uniformizer"
    );
    let like = center[0].zero_like();
    let k = unknowns.len();

    let constant = |v: &F, p: usize| TruncSeries::new(&like, vec![v.clone()], p);
    let make_coords = |p: usize| -> Vec<TruncSeries<F>> {
        let mut coords: Vec<TruncSeries<F>> =
            center.iter().map(|v| constant(v, p)).collect();
        coords[uniformizer] = coords[uniformizer].add(&TruncSeries::t(&like, p));
        coords
    };

    // Center must satisfy the system.
    let base = eval(&make_coords(1));
    if base.len() != k {
        return Err(Error::Other(format!(
            "system has {} equations but {} unknowns",
            base.len(),
            k
        )));
    }
    if base.iter().any(|r| !r.coeff(0).is_zero()) {
        return Err(Error::Other(
            "center does not satisfy the system".into(),
        ));
    }

    // Jacobian block with respect to the unknowns, by first-order probes.
    let mut jac = Mat::zeros(&like, k, k);
    for (j, &uj) in unknowns.iter().enumerate() {
        let mut probe: Vec<TruncSeries<F>> =
            center.iter().map(|v| constant(v, 2)).collect();
        probe[uj] = probe[uj].add(&TruncSeries::t(&like, 2));
        for (r, res) in eval(&probe).iter().enumerate() {
            *jac.at_mut(r, j) = res.coeff(1);
        }
    }
    if jac.rank() < k {
        return Err(Error::Other(
            "jacobian block is singular at the center".into(),
        ));
    }

    let mut coords = make_coords(prec);
    for m in 1..prec {
        let residuals = eval(&coords);
        let rhs: Vec<F> = residuals.iter().map(|r| r.coeff(m).neg()).collect();
        if rhs.iter().all(Field::is_zero) {
            continue;
        }
        let delta = jac.solve(&rhs).expect("jacobian verified invertible");
        for (j, &uj) in unknowns.iter().enumerate() {
            if delta[j].is_zero() {
                continue;
            }
            let mut cs = vec![like.clone(); prec];
            cs[m] = delta[j].clone();
            coords[uj] = coords[uj].add(&TruncSeries::new(&like, cs, prec));
        }
    }

    // Final consistency check.
    let residuals = eval(&coords);
    if residuals.iter().any(|r| !r.is_zero()) {
        return Err(Error::Other(
            "lift failed to annihilate the system at requested precision".into(),
        ));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_make, FFElem};
    use crate::field::{rat, rat_int};

    fn circle_eval(coords: &[TruncSeries<num_rational::BigRational>]) -> Vec<TruncSeries<num_rational::BigRational>> {
        // x^2 + y^2 - 1
        let one = TruncSeries::one(&rat_int(0), coords[0].prec());
        vec![coords[0].mul(&coords[0]).add(&coords[1].mul(&coords[1])).sub(&one)]
    }

    #[test]
    fn circle_matches_direct_square_root() {
        // At (3/5, 4/5) with x as parameter: y = sqrt(1 - (3/5 + t)^2).
        let center = [rat(3, 5), rat(4, 5)];
        let coords = lift_coordinates(&center, 0, &[1], &circle_eval, 6).unwrap();
        let like = rat_int(0);
        let radicand = TruncSeries::new(
            &like,
            vec![rat(16, 25), rat(-6, 5), rat_int(-1)],
            6,
        );
        let direct = radicand.sqrt_with(&rat(4, 5)).unwrap();
        assert_eq!(coords[1], direct);
        assert_eq!(coords[0].coeff(0), rat(3, 5));
        assert_eq!(coords[0].coeff(1), rat_int(1));
    }

    #[test]
    fn circle_over_finite_field() {
        let f13 = field_make(13, 1).unwrap();
        let e = |v: i64| FFElem::from_i64(&f13, v);
        // 3^2 + 2^2 = 13 ≡ 0, so use x^2 + y^2 - 13 ≡ x^2 + y^2.
        let eval = |coords: &[TruncSeries<FFElem>]| {
            vec![coords[0].mul(&coords[0]).add(&coords[1].mul(&coords[1]))]
        };
        let coords = lift_coordinates(&[e(3), e(2)], 0, &[1], &eval, 5).unwrap();
        let res = eval(&coords);
        assert!(res[0].is_zero());
        // The unknown really moves: dy/dx = -x/y at the center.
        let slope = e(3).neg().div(&e(2)).unwrap();
        assert_eq!(coords[1].coeff(1), slope);
    }

    #[test]
    fn singular_center_is_rejected() {
        // Nodal cubic y^2 - x^2(x+1) at the node (0,0): dF/dy = 0 there.
        let eval = |coords: &[TruncSeries<num_rational::BigRational>]| {
            let x = &coords[0];
            let y = &coords[1];
            let one = TruncSeries::one(&rat_int(0), x.prec());
            vec![y.mul(y).sub(&x.mul(x).mul(&x.add(&one)))]
        };
        let err = lift_coordinates(&[rat_int(0), rat_int(0)], 0, &[1], &eval, 4);
        assert!(err.is_err());
    }

    #[test]
    fn off_variety_center_is_rejected() {
        let err = lift_coordinates(&[rat_int(1), rat_int(1)], 0, &[1], &circle_eval, 3);
        assert!(err.is_err());
    }

    #[test]
    fn two_unknowns_twisted_cubic() {
        // y = x^2, z = x^3 as a system in (x, y, z) at (2, 4, 8).
        let eval = |coords: &[TruncSeries<num_rational::BigRational>]| {
            let (x, y, z) = (&coords[0], &coords[1], &coords[2]);
            vec![y.sub(&x.mul(x)), z.sub(&x.mul(x).mul(x))]
        };
        let coords =
            lift_coordinates(&[rat_int(2), rat_int(4), rat_int(8)], 0, &[1, 2], &eval, 4).unwrap();
        // y = (2+t)^2 = 4 + 4t + t^2, z = (2+t)^3 = 8 + 12t + 6t^2 + t^3.
        assert_eq!(
            coords[1].coeffs(),
            &[rat_int(4), rat_int(4), rat_int(1), rat_int(0)]
        );
        assert_eq!(
            coords[2].coeffs(),
            &[rat_int(8), rat_int(12), rat_int(6), rat_int(1)]
        );
    }
}
