//! Exact point enumeration over small finite fields. Points of the reduced
//! model over F_{p^k} are listed by a disjoint cell decomposition of
//! (weighted) projective space plus a recursive elimination solver:
//! univariate fibers are handled by gcd and root extraction, bivariate and
//! trivariate systems by Sylvester resultants (computed exactly, with an
//! evaluation–interpolation path when the matrices grow), and anything
//! wider is fibered over one coordinate at a time. Positive-dimensional
//! degenerations stay exact: an unconstrained coordinate contributes every
//! field value, subject to a hard budget.

use std::collections::BTreeSet;
use std::sync::Arc;

use exactalg::{embed, field_make, FFElem, Field, FieldDesc, FiniteField, Poly};

use crate::error::{Error, Result};
use crate::mpoly::{sylvester_resultant, MPoly};
use crate::reduce::ReducedCurve;

/// Hard cap on explicitly materialized solution boxes (degenerate fibers).
const BOX_LIMIT: u64 = 2_000_000;

/// A closed point of the reduced curve: one representative over
/// F_{p^degree}, cell-normalized, lexicographically smallest in its
/// Frobenius orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlacePoint {
    pub coords: Vec<FFElem>,
    pub degree: usize,
}

/// All points of the curve with coordinates in F_{p^k}, sorted, each in the
/// canonical cell normalization (first nonzero weight-1 coordinate is 1,
/// earlier weight-1 coordinates zero).
pub fn points_over(rc: &ReducedCurve, k: usize) -> Result<Vec<Vec<FFElem>>> {
    let ctx = if k == 1 { rc.fp.clone() } else { field_make(rc.p, k)? };
    let like = FFElem::from_u64(&ctx, 0);
    let eqs: Vec<MPoly<FFElem>> = rc
        .equations
        .iter()
        .map(|e| e.map_coeffs(&like, |c| embed(c, &ctx).expect("prime subfield embeds")))
        .collect();
    points_of_system(&eqs, &rc.weights, &ctx)
}

/// #X(F_{p^k}).
pub fn count_over(rc: &ReducedCurve, k: usize) -> Result<u64> {
    Ok(points_over(rc, k)?.len() as u64)
}

/// Closed points of exact degree k, i.e. Frobenius orbits of size k among
/// the points over F_{p^k}, each as its canonical representative, sorted.
pub fn places_of_degree(rc: &ReducedCurve, k: usize) -> Result<Vec<PlacePoint>> {
    let pts = points_over(rc, k)?;
    let set: BTreeSet<Vec<FFElem>> = pts.into_iter().collect();
    let mut seen: BTreeSet<Vec<FFElem>> = BTreeSet::new();
    let mut places = Vec::new();
    for pt in &set {
        if seen.contains(pt) {
            continue;
        }
        let mut orbit = vec![pt.clone()];
        let mut cur: Vec<FFElem> = pt.iter().map(|c| c.frobenius()).collect();
        while &cur != pt {
            orbit.push(cur.clone());
            cur = cur.iter().map(|c| c.frobenius()).collect();
        }
        for o in &orbit {
            seen.insert(o.clone());
        }
        if orbit.len() == k {
            let rep = orbit.iter().min().expect("orbit nonempty").clone();
            places.push(PlacePoint { coords: rep, degree: k });
        }
    }
    places.sort();
    Ok(places)
}

/// Enumerates the points of a (weighted-)homogeneous system over the
/// coefficient field of `eqs`, by cells: for each weight-1 index j in
/// ascending order, the cell has all earlier weight-1 coordinates 0, the
/// j-th equal to 1, and the rest free; a final cell covers points whose
/// weight-1 coordinates all vanish.
pub fn points_of_system(
    eqs: &[MPoly<FFElem>],
    weights: &[usize],
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let n = weights.len();
    let like = FFElem::from_u64(ctx, 0);
    let one = like.one_like();
    let zero = like.zero_like();
    let w1: Vec<usize> = (0..n).filter(|&i| weights[i] == 1).collect();
    let mut out: Vec<Vec<FFElem>> = Vec::new();
    for (t, &j) in w1.iter().enumerate() {
        let mut cell_eqs: Vec<MPoly<FFElem>> = Vec::new();
        for e in eqs {
            let mut s = e.set_var_const(j, &one);
            for &z in &w1[..t] {
                s = s.set_var_const(z, &zero);
            }
            cell_eqs.push(s);
        }
        let free: Vec<usize> = (0..n).filter(|i| *i != j && !w1[..t].contains(i)).collect();
        for sol in solve(&cell_eqs, &free, ctx)? {
            let mut coords = vec![zero.clone(); n];
            coords[j] = one.clone();
            for (slot, &var) in free.iter().enumerate() {
                coords[var] = sol[slot].clone();
            }
            debug_assert!(eqs.iter().all(|e| e.eval(&coords).is_zero()));
            out.push(coords);
        }
    }
    // Points with every weight-1 coordinate zero.
    let rest: Vec<usize> = (0..n).filter(|&i| weights[i] != 1).collect();
    match rest.len() {
        0 => {}
        1 => {
            let mut coords = vec![zero.clone(); n];
            coords[rest[0]] = one.clone();
            if eqs.iter().all(|e| e.eval(&coords).is_zero()) {
                out.push(coords);
            }
        }
        _ => {
            return Err(Error::Enumeration(
                "more than one coordinate of weight above 1 is unsupported".into(),
            ))
        }
    }
    out.sort();
    Ok(out)
}

/// Common zeros of `polys` in the variables `free` (all other variables
/// already specialized away). Returns value tuples parallel to `free`.
fn solve(
    polys_in: &[MPoly<FFElem>],
    free: &[usize],
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let polys: Vec<MPoly<FFElem>> = polys_in.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(Vec::new());
    }
    if free.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    if polys.is_empty() {
        return all_tuples(ctx, free.len());
    }
    match free.len() {
        1 => {
            let g = gcd_univariate(&polys, free[0]).expect("nonzero polynomials remain");
            Ok(root_list(&g).into_iter().map(|r| vec![r]).collect())
        }
        2 => solve_bivariate(&polys, free[0], free[1], ctx),
        3 => solve_trivariate(&polys, free, ctx),
        _ => {
            let mut out = Vec::new();
            for v in FFElem::all_elements(ctx) {
                let spec: Vec<MPoly<FFElem>> =
                    polys.iter().map(|p| p.set_var_const(free[0], &v)).collect();
                for mut s in solve(&spec, &free[1..], ctx)? {
                    let mut t = Vec::with_capacity(free.len());
                    t.push(v.clone());
                    t.append(&mut s);
                    out.push(t);
                }
            }
            Ok(out)
        }
    }
}

/// Every tuple in F_q^r (degenerate fully-free fiber), budget-guarded.
fn all_tuples(ctx: &Arc<FieldDesc>, r: usize) -> Result<Vec<Vec<FFElem>>> {
    let q = ctx.size_u64().unwrap_or(u64::MAX);
    let total = q.checked_pow(r as u32).unwrap_or(u64::MAX);
    if total > BOX_LIMIT {
        return Err(Error::Enumeration(format!(
            "free fiber of size {q}^{r} exceeds the enumeration budget"
        )));
    }
    let elems = FFElem::all_elements(ctx);
    let mut out: Vec<Vec<FFElem>> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for t in &out {
            for e in &elems {
                let mut u = t.clone();
                u.push(e.clone());
                next.push(u);
            }
        }
        out = next;
    }
    Ok(out)
}

/// gcd of the nonzero univariate images of `polys` in `var`; None when all
/// vanish identically.
fn gcd_univariate(polys: &[MPoly<FFElem>], var: usize) -> Option<Poly<FFElem>> {
    let mut g: Option<Poly<FFElem>> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let u = p
            .to_poly_in(var)
            .expect("polynomial involves only the solve variable");
        g = Some(match g {
            None => u,
            Some(g) => g.gcd(&u),
        });
    }
    g
}

fn root_list(g: &Poly<FFElem>) -> Vec<FFElem> {
    if g.deg() < 1 {
        return Vec::new();
    }
    let mut r = g.roots();
    r.sort();
    r
}

/// Common zeros of polynomials in two variables (u, v), v treated as the
/// elimination pivot.
fn solve_bivariate(
    polys: &[MPoly<FFElem>],
    u: usize,
    v: usize,
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let (a_set, b_set): (Vec<_>, Vec<_>) = polys.iter().cloned().partition(|p| p.degree_in(v) > 0);
    let elems = FFElem::all_elements(ctx);
    if a_set.is_empty() {
        let g = gcd_univariate(&b_set, u).expect("nonempty");
        let mut out = Vec::new();
        for r in root_list(&g) {
            for w in &elems {
                out.push(vec![r.clone(), w.clone()]);
            }
        }
        return Ok(out);
    }
    let mut base: Vec<Poly<FFElem>> = b_set
        .iter()
        .map(|p| p.to_poly_in(u).expect("free of the pivot variable"))
        .collect();
    for i in 1..a_set.len() {
        match resultant_wrt(&a_set[0], &a_set[i], u, v, ctx)? {
            Some(r) => {
                if r.is_zero() {
                    continue;
                }
                if r.deg() == 0 {
                    return Ok(Vec::new());
                }
                base.push(r);
            }
            None => return brute_pairs(polys, u, v, ctx),
        }
    }
    let base_roots: Vec<FFElem> = if base.is_empty() {
        elems.clone()
    } else {
        let mut g: Option<Poly<FFElem>> = None;
        for b in &base {
            g = Some(match g {
                None => b.clone(),
                Some(g) => g.gcd(b),
            });
        }
        root_list(&g.expect("nonempty base"))
    };
    let mut out = Vec::new();
    for a in base_roots {
        let mut spec: Vec<Poly<FFElem>> = Vec::new();
        let mut all_vanish = true;
        for p in &a_set {
            let s = p.set_var_const(u, &a);
            if s.is_zero() {
                continue;
            }
            all_vanish = false;
            spec.push(s.to_poly_in(v).expect("only the pivot remains"));
        }
        if all_vanish {
            for w in &elems {
                out.push(vec![a.clone(), w.clone()]);
            }
        } else {
            let mut g: Option<Poly<FFElem>> = None;
            for s in &spec {
                g = Some(match g {
                    None => s.clone(),
                    Some(g) => g.gcd(s),
                });
            }
            for b in root_list(&g.expect("nonempty")) {
                out.push(vec![a.clone(), b]);
            }
        }
    }
    debug_assert!(out.iter().all(|s| {
        polys
            .iter()
            .all(|p| p.set_var_const(u, &s[0]).set_var_const(v, &s[1]).is_zero())
    }));
    Ok(out)
}

/// Exhaustive fallback when the field is too small for interpolation.
fn brute_pairs(
    polys: &[MPoly<FFElem>],
    u: usize,
    v: usize,
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let elems = FFElem::all_elements(ctx);
    let q = elems.len() as u64;
    if q * q > BOX_LIMIT {
        return Err(Error::Enumeration(
            "bivariate brute-force box exceeds the enumeration budget".into(),
        ));
    }
    let mut out = Vec::new();
    for a in &elems {
        let spec: Vec<MPoly<FFElem>> = polys.iter().map(|p| p.set_var_const(u, a)).collect();
        for b in &elems {
            if spec.iter().all(|p| p.set_var_const(v, b).is_zero()) {
                out.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    Ok(out)
}

/// Resultant of f and g with respect to `v`, as a univariate polynomial in
/// `u`. Small Sylvester matrices go through the exact cofactor determinant;
/// larger ones through evaluation–interpolation at nodes where neither
/// leading coefficient drops. None when the field has too few good nodes.
fn resultant_wrt(
    f: &MPoly<FFElem>,
    g: &MPoly<FFElem>,
    u: usize,
    v: usize,
    ctx: &Arc<FieldDesc>,
) -> Result<Option<Poly<FFElem>>> {
    let df = f.degree_in(v) as usize;
    let dg = g.degree_in(v) as usize;
    assert!(df > 0 && dg > 0);
    if df + dg <= 6 {
        let r = sylvester_resultant(f, g, v);
        let p = r
            .to_poly_in(u)
            .expect("resultant is free of the pivot variable");
        return Ok(Some(p));
    }
    let dbound = df * g.degree_in(u) as usize + dg * f.degree_in(u) as usize;
    let mut nodes: Vec<(FFElem, FFElem)> = Vec::new();
    for a in FFElem::all_elements(ctx) {
        let fa = f.set_var_const(u, &a);
        let ga = g.set_var_const(u, &a);
        if fa.degree_in(v) as usize != df || ga.degree_in(v) as usize != dg {
            continue;
        }
        let fp = fa.to_poly_in(v).expect("only the pivot remains");
        let gp = ga.to_poly_in(v).expect("only the pivot remains");
        nodes.push((a, fp.resultant(&gp)));
        if nodes.len() == dbound + 1 {
            break;
        }
    }
    if nodes.len() < dbound + 1 {
        return Ok(None);
    }
    Ok(Some(Poly::interpolate(&nodes)))
}

/// Common zeros in three variables: eliminate the last by resultants into a
/// bivariate base, then lift fiber by fiber.
fn solve_trivariate(
    polys: &[MPoly<FFElem>],
    free: &[usize],
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let (u, v, w) = (free[0], free[1], free[2]);
    let elems = FFElem::all_elements(ctx);
    let (a_set, b_set): (Vec<_>, Vec<_>) = polys.iter().cloned().partition(|p| p.degree_in(w) > 0);
    if a_set.is_empty() {
        let base = solve(&b_set, &[u, v], ctx)?;
        let mut out = Vec::new();
        for s in base {
            for val in &elems {
                out.push(vec![s[0].clone(), s[1].clone(), val.clone()]);
            }
        }
        return Ok(out);
    }
    let mut base_polys: Vec<MPoly<FFElem>> = b_set;
    for i in 1..a_set.len() {
        let df = a_set[0].degree_in(w) as usize;
        let dg = a_set[i].degree_in(w) as usize;
        if df + dg > 6 {
            // Degrees too large for an exact multivariate determinant:
            // fiber the first variable instead.
            return fiber_first(polys, free, ctx);
        }
        let r = sylvester_resultant(&a_set[0], &a_set[i], w);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(Vec::new());
        }
        base_polys.push(r);
    }
    let base_sols: Vec<Vec<FFElem>> = if base_polys.is_empty() {
        let q = elems.len() as u64;
        if q * q > BOX_LIMIT {
            return Err(Error::Enumeration(
                "unconstrained trivariate base exceeds the enumeration budget".into(),
            ));
        }
        let mut all = Vec::new();
        for a in &elems {
            for b in &elems {
                all.push(vec![a.clone(), b.clone()]);
            }
        }
        all
    } else {
        solve(&base_polys, &[u, v], ctx)?
    };
    let mut out = Vec::new();
    for s in base_sols {
        let mut spec: Vec<Poly<FFElem>> = Vec::new();
        let mut all_vanish = true;
        for p in &a_set {
            let t = p.set_var_const(u, &s[0]).set_var_const(v, &s[1]);
            if t.is_zero() {
                continue;
            }
            all_vanish = false;
            spec.push(t.to_poly_in(w).expect("only the pivot remains"));
        }
        let w_vals: Vec<FFElem> = if all_vanish {
            elems.clone()
        } else {
            let mut g: Option<Poly<FFElem>> = None;
            for t in &spec {
                g = Some(match g {
                    None => t.clone(),
                    Some(g) => g.gcd(t),
                });
            }
            root_list(&g.expect("nonempty"))
        };
        for val in w_vals {
            let full = vec![s[0].clone(), s[1].clone(), val];
            let good = polys.iter().all(|p| {
                p.set_var_const(u, &full[0])
                    .set_var_const(v, &full[1])
                    .set_var_const(w, &full[2])
                    .is_zero()
            });
            if good {
                out.push(full);
            }
        }
    }
    Ok(out)
}

fn fiber_first(
    polys: &[MPoly<FFElem>],
    free: &[usize],
    ctx: &Arc<FieldDesc>,
) -> Result<Vec<Vec<FFElem>>> {
    let mut out = Vec::new();
    for val in FFElem::all_elements(ctx) {
        let spec: Vec<MPoly<FFElem>> = polys.iter().map(|p| p.set_var_const(free[0], &val)).collect();
        for mut s in solve(&spec, &free[1..], ctx)? {
            let mut t = Vec::with_capacity(free.len());
            t.push(val.clone());
            t.append(&mut s);
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use num_rational::BigRational;

    fn over_f(p: u64, k: usize, s: &str, nvars: usize) -> (MPoly<FFElem>, Arc<FieldDesc>) {
        let ctx = field_make(p, k).unwrap();
        let like = FFElem::from_u64(&ctx, 0);
        let q: MPoly<BigRational> = parse_poly(s, nvars).unwrap();
        let m = q.map_coeffs(&like, |c| {
            let num = like.from_bigint_like(c.numer());
            let den = like.from_bigint_like(c.denom());
            num.mul(&den.inv().unwrap())
        });
        (m, ctx)
    }

    /// Exhaustive reference count for a homogeneous system over F_q.
    fn brute_projective_count(eqs: &[MPoly<FFElem>], ctx: &Arc<FieldDesc>, n: usize) -> usize {
        let elems = FFElem::all_elements(ctx);
        let mut reps = BTreeSet::new();
        let mut stack: Vec<Vec<FFElem>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for t in &stack {
                for e in &elems {
                    let mut u = t.clone();
                    u.push(e.clone());
                    next.push(u);
                }
            }
            stack = next;
        }
        for coords in stack {
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            if !eqs.iter().all(|e| e.eval(&coords).is_zero()) {
                continue;
            }
            // Normalize: first nonzero coordinate to 1.
            let lead = coords.iter().position(|c| !c.is_zero()).unwrap();
            let inv = coords[lead].inv().unwrap();
            let rep: Vec<FFElem> = coords.iter().map(|c| c.mul(&inv)).collect();
            reps.insert(rep);
        }
        reps.len()
    }

    #[test]
    fn conic_count_matches_line_count() {
        // A smooth conic in P^2 is rational: q + 1 points.
        for (p, k) in [(5u64, 1usize), (7, 1), (3, 2)] {
            let (e, ctx) = over_f(p, k, "x0^2 + x1^2 - x2^2", 3);
            let pts = points_of_system(&[e.clone()], &[1, 1, 1], &ctx).unwrap();
            let q = p.pow(k as u32);
            assert_eq!(pts.len() as u64, q + 1);
            assert_eq!(pts.len(), brute_projective_count(&[e], &ctx, 3));
        }
    }

    #[test]
    fn quadric_pair_in_p3_matches_brute_force() {
        let (e1, ctx) = over_f(7, 1, "x0^2 + x1*x3 - x2^2", 4);
        let (e2, _) = over_f(7, 1, "x1^2 - x0*x2 + x3^2", 4);
        let eqs = vec![e1, e2];
        let pts = points_of_system(&eqs, &[1, 1, 1, 1], &ctx).unwrap();
        assert_eq!(pts.len(), brute_projective_count(&eqs, &ctx, 4));
        // All reported points satisfy the system and are distinct.
        let set: BTreeSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), pts.len());
    }

    #[test]
    fn quadric_triple_in_p4_matches_brute_force() {
        let (e1, ctx) = over_f(3, 1, "x0^2 + x1*x4 - x2^2", 5);
        let (e2, _) = over_f(3, 1, "x1^2 - x0*x2 + x3*x4", 5);
        let (e3, _) = over_f(3, 1, "x2^2 + x3^2 - x0*x1 - x4^2", 5);
        let eqs = vec![e1, e2, e3];
        let pts = points_of_system(&eqs, &[1, 1, 1, 1, 1], &ctx).unwrap();
        assert_eq!(pts.len(), brute_projective_count(&eqs, &ctx, 5));
    }

    #[test]
    fn weighted_sextic_cells_cover_all_points() {
        // y^2 = x^6 + 1 in P(1,3,1): compare against a direct scan of the
        // two affine charts plus the high-weight point.
        let (e, ctx) = over_f(11, 1, "x1^2 - x0^6 - x2^6", 3);
        let pts = points_of_system(&[e.clone()], &[1, 3, 1], &ctx).unwrap();
        let elems = FFElem::all_elements(&ctx);
        let one = FFElem::from_u64(&ctx, 1);
        let mut count = 0usize;
        // Chart x0 = 1.
        for y in &elems {
            for z in &elems {
                let v = vec![one.clone(), y.clone(), z.clone()];
                if e.eval(&v).is_zero() {
                    count += 1;
                }
            }
        }
        // Chart x0 = 0, x2 = 1.
        for y in &elems {
            let v = vec![FFElem::from_u64(&ctx, 0), y.clone(), one.clone()];
            if e.eval(&v).is_zero() {
                count += 1;
            }
        }
        assert_eq!(pts.len(), count);
        for p in &pts {
            assert!(e.eval(p).is_zero());
        }
    }

    #[test]
    fn degenerate_split_conic_is_counted_exactly() {
        // x0^2 - x1^2 = (x0-x1)(x0+x1): two lines meeting in a point,
        // 2(q+1) - 1 points.
        let (e, ctx) = over_f(5, 1, "x0^2 - x1^2", 3);
        let pts = points_of_system(&[e], &[1, 1, 1], &ctx).unwrap();
        assert_eq!(pts.len(), 2 * 6 - 1);
    }

    #[test]
    fn places_group_into_frobenius_orbits() {
        // The conic over F_3: 4 rational points; over F_9: 10 points, so
        // (10 - 4) / 2 = 3 places of degree 2.
        let (e, ctx) = over_f(3, 1, "x0^2 + x1^2 - x2^2", 3);
        let rc = crate::reduce::ReducedCurve::for_tests(3, vec![e], vec![1, 1, 1], ctx);
        let d1 = places_of_degree(&rc, 1).unwrap();
        assert_eq!(d1.len(), 4);
        assert!(d1.iter().all(|pl| pl.degree == 1));
        let d2 = places_of_degree(&rc, 2).unwrap();
        assert_eq!(d2.len(), 3);
        for pl in &d2 {
            // Canonical representative: lexicographically no larger than its
            // Frobenius image.
            let img: Vec<FFElem> = pl.coords.iter().map(|c| c.frobenius()).collect();
            assert!(pl.coords <= img);
            assert_ne!(pl.coords, img);
        }
    }

    #[test]
    fn interpolated_resultants_agree_with_cofactor_determinants() {
        // Two bivariate polynomials with pivot degrees summing past 6 force
        // the interpolation path; compare with the direct determinant on a
        // case small enough for both.
        let (f, ctx) = over_f(101, 1, "x1^4 + x0*x1^2 + x0^2", 2);
        let (g, _) = over_f(101, 1, "x1^4 - x0^3*x1 + 1", 2);
        let via_interp = resultant_wrt(&f, &g, 0, 1, &ctx).unwrap().unwrap();
        let via_det = sylvester_resultant(&f, &g, 1).to_poly_in(0).unwrap();
        let diff = via_interp.sub(&via_det);
        assert!(diff.is_zero());
    }
}
