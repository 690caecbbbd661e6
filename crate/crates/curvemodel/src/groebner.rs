//! Buchberger's algorithm over an exact field, used only to certify that an
//! ideal is trivial (contains 1) or not. The good-reduction screen feeds it
//! the equations of an affine chart together with the Jacobian minors: the
//! singular locus is empty over the algebraic closure exactly when the
//! combined ideal is trivial.

use crate::error::{Error, Result};
use crate::mpoly::{cmp_degrevlex, Exps, MPoly};
use exactalg::Field;
use std::cmp::Ordering;

fn mono_divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect()
}

fn mono_mul(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Fully reduces `p` modulo `basis` (every basis element monic).
fn normal_form<F: Field>(p: &MPoly<F>, basis: &[MPoly<F>]) -> MPoly<F> {
    let nvars = p.nvars();
    let like = p.like().clone();
    let mut rem = p.clone();
    loop {
        let mut hit: Option<(Exps, F, usize)> = None;
        'scan: for (e, c) in rem.terms() {
            for (bi, b) in basis.iter().enumerate() {
                let (be, _) = b.lead().expect("basis elements are nonzero");
                if mono_divides(be, e) {
                    hit = Some((e.clone(), c.clone(), bi));
                    break 'scan;
                }
            }
        }
        let Some((e, c, bi)) = hit else {
            return rem;
        };
        let be = basis[bi].lead().expect("nonzero").0.clone();
        let q = mono_div(&e, &be);
        let shift = MPoly::from_terms(nvars, &like, vec![(q, c)]);
        rem = rem.sub(&shift.mul(&basis[bi]));
    }
}

/// Whether the ideal generated by `gens` contains 1, decided by running
/// Buchberger to completion. `cap` bounds the number of S-polynomial
/// reductions; exceeding it is reported as an error rather than a guess.
pub fn ideal_is_trivial<F: Field>(gens: &[MPoly<F>], cap: usize) -> Result<bool> {
    let mut basis: Vec<MPoly<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok(true);
        }
        let lc = g.lead().expect("nonzero").1.clone();
        let inv = lc.inv().expect("field");
        basis.push(g.scale(&inv));
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut spent = 0usize;
    while let Some(pos) = next_pair(&pairs, &basis) {
        let (i, j) = pairs.swap_remove(pos);
        spent += 1;
        if spent > cap {
            return Err(Error::Enumeration(format!(
                "Buchberger cap of {cap} S-polynomial reductions exceeded"
            )));
        }
        let (ei, _) = basis[i].lead().unwrap();
        let (ej, _) = basis[j].lead().unwrap();
        // Product criterion: coprime leading monomials reduce to zero.
        if mono_mul(ei, ej) == mono_lcm(ei, ej) {
            continue;
        }
        let l = mono_lcm(ei, ej);
        let like = basis[i].like().clone();
        let nvars = basis[i].nvars();
        let mi = MPoly::from_terms(nvars, &like, vec![(mono_div(&l, ei), like.one_like())]);
        let mj = MPoly::from_terms(nvars, &like, vec![(mono_div(&l, ej), like.one_like())]);
        let s = mi.mul(&basis[i]).sub(&mj.mul(&basis[j]));
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(true);
        }
        let lc = r.lead().unwrap().1.clone();
        let monic = r.scale(&lc.inv().expect("field"));
        for k in 0..basis.len() {
            pairs.push((k, basis.len()));
        }
        basis.push(monic);
    }
    Ok(false)
}

/// Picks the pending pair with the degrevlex-smallest lcm (normal strategy).
fn next_pair<F: Field>(pairs: &[(usize, usize)], basis: &[MPoly<F>]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let la = mono_lcm(basis[a.0].lead().unwrap().0, basis[a.1].lead().unwrap().0);
            let lb = mono_lcm(basis[b.0].lead().unwrap().0, basis[b.1].lead().unwrap().0);
            match cmp_degrevlex(&la, &lb) {
                Ordering::Equal => a.cmp(b),
                o => o,
            }
        })
        .map(|(k, _)| k)
}
