//! Integer matrix normal forms: Hermite normal form (row style) with
//! optional unimodular transform, Smith normal form with transforms, left
//! kernels and left solving. Entries are arbitrary-precision throughout;
//! matrix sizes here are small (ambient rank ≤ 6, a few dozen rows), so
//! classical elimination is fine without size-reduction tricks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat_from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> IMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let (ra, ca) = (a.len(), a.first().map_or(0, |r| r.len()));
    let (rb, cb) = (b.len(), b.first().map_or(0, |r| r.len()));
    assert_eq!(ca, rb, "dimension mismatch");
    let mut out = zeros(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                let add = &a[i][k] * &b[k][j];
                out[i][j] += add;
            }
        }
    }
    out
}

pub fn row_vec_mul(v: &[BigInt], m: &IMat) -> Vec<BigInt> {
    let cols = m.first().map_or(0, |r| r.len());
    assert_eq!(v.len(), m.len());
    let mut out = vec![BigInt::zero(); cols];
    for (vi, row) in v.iter().zip(m.iter()) {
        if vi.is_zero() {
            continue;
        }
        for (o, rij) in out.iter_mut().zip(row.iter()) {
            *o += vi * rij;
        }
    }
    out
}

/// Row-style Hermite normal form. Returns (H, U) with U·A = H, U unimodular
/// of size rows×rows. H has its nonzero rows first, pivots positive,
/// strictly increasing pivot columns, and entries above each pivot reduced
/// into [0, pivot).
pub fn hnf_with_transform(a: &IMat) -> (IMat, IMat) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut rank = 0;
    for col in 0..cols {
        // Eliminate below `rank` by pairwise gcd steps.
        loop {
            // Find the row (≥ rank) with smallest nonzero |entry| in col.
            let mut best: Option<usize> = None;
            for r in rank..rows {
                if h[r][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if h[r][col].abs() < h[b][col].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(piv) = best else {
                break;
            };
            h.swap(rank, piv);
            u.swap(rank, piv);
            // Reduce all other rows below by the pivot row.
            let mut done = true;
            for r in rank + 1..rows {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&h[r][col], &h[rank][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut h, r, rank, &q);
                    row_sub_mul(&mut u, r, rank, &q);
                }
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rank < rows && !h[rank][col].is_zero() {
            // Normalize pivot sign.
            if h[rank][col].is_negative() {
                row_negate(&mut h, rank);
                row_negate(&mut u, rank);
            }
            // Reduce entries above the pivot into [0, pivot).
            for r in 0..rank {
                let q = h[r][col].div_floor(&h[rank][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut h, r, rank, &q);
                    row_sub_mul(&mut u, r, rank, &q);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
    }
    (h, u)
}

/// Nearest-integer division (rounds toward the quotient that minimizes the
/// remainder's absolute value), used during elimination to keep entries
/// small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * BigInt::from(2);
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn row_sub_mul(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *d -= q * s;
    }
}

fn row_negate(m: &mut IMat, r: usize) {
    for v in m[r].iter_mut() {
        *v = -v.clone();
    }
}

/// HNF basis rows only (zero rows dropped).
pub fn hnf(a: &IMat) -> IMat {
    let (h, _) = hnf_with_transform(a);
    h.into_iter().filter(|r| !row_is_zero(r)).collect()
}

pub fn row_is_zero(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

/// Basis of the left kernel {x : x·A = 0}.
pub fn left_kernel(a: &IMat) -> IMat {
    let (h, u) = hnf_with_transform(a);
    h.iter()
        .zip(u.into_iter())
        .filter(|(hr, _)| row_is_zero(hr))
        .map(|(_, ur)| ur)
        .collect()
}

/// One integer solution x of x·A = target, if any.
pub fn solve_left(a: &IMat, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u) = hnf_with_transform(a);
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    assert_eq!(target.len(), cols);
    let mut v = target.to_vec();
    let mut coeffs = vec![BigInt::zero(); rows];
    for (i, hr) in h.iter().enumerate() {
        if row_is_zero(hr) {
            break;
        }
        let pivot_col = hr.iter().position(|x| !x.is_zero()).unwrap();
        let (q, r) = v[pivot_col].div_rem(&hr[pivot_col]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (vj, hj) in v.iter_mut().zip(hr.iter()) {
                *vj -= &q * hj;
            }
        }
        coeffs[i] = q;
    }
    if !row_is_zero(&v) {
        return None;
    }
    Some(row_vec_mul(&coeffs, &u))
}

/// Smith normal form: returns (d, u, v) where u·A·v = diag(d) padded with
/// zeros, u and v unimodular, and d₁ | d₂ | … with all dᵢ ≥ 0.
pub fn snf_with_transforms(a: &IMat) -> (Vec<BigInt>, IMat, IMat) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find a nonzero pivot in the lower-right submatrix.
        let mut piv: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() {
                    match piv {
                        None => piv = Some((i, j)),
                        Some((pi, pj)) => {
                            if m[i][j].abs() < m[pi][pj].abs() {
                                piv = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = piv else {
            break;
        };
        m.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut m, t, pj);
        col_swap(&mut v, t, pj);
        // Clear row and column t.
        let mut dirty = false;
        for i in t + 1..rows {
            if !m[i][t].is_zero() {
                let q = div_round(&m[i][t], &m[t][t]);
                if !q.is_zero() {
                    row_sub_mul(&mut m, i, t, &q);
                    row_sub_mul(&mut u, i, t, &q);
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let q = div_round(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    col_sub_mul(&mut m, j, t, &q);
                    col_sub_mul(&mut v, j, t, &q);
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // Divisibility: pivot must divide every entry of the remaining block.
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    // Add row i to row t and restart elimination at t.
                    for col in 0..cols {
                        let add = m[i][col].clone();
                        m[t][col] += add;
                    }
                    for col in 0..rows {
                        let add = u[i][col].clone();
                        u[t][col] += add;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        if m[t][t].is_negative() {
            row_negate(&mut m, t);
            row_negate(&mut u, t);
        }
        t += 1;
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (d, u, v)
}

fn col_swap(m: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_sub_mul(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * &s;
    }
}

/// Diagonal of the Smith normal form (nonzero entries, each dividing the
/// next).
pub fn snf_diagonal(a: &IMat) -> Vec<BigInt> {
    let (d, _, _) = snf_with_transforms(a);
    d.into_iter().filter(|x| !x.is_zero()).collect()
}

/// |det| of a square integer matrix, via the SNF diagonal.
pub fn abs_det(a: &IMat) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix not square");
    let (d, _, _) = snf_with_transforms(a);
    let mut acc = BigInt::one();
    for x in d {
        acc *= x;
    }
    acc.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_identity_is_identity() {
        let i = identity(3);
        assert_eq!(hnf(&i), i);
    }

    #[test]
    fn hnf_zero_matrix_is_empty() {
        let z = zeros(1, 2);
        assert!(hnf(&z).is_empty());
    }

    #[test]
    fn hnf_transform_is_consistent() {
        let a = imat_from_i64(&[vec![4, 2, 8], vec![6, 3, 9], vec![2, 1, 5]]);
        let (h, u) = hnf_with_transform(&a);
        assert_eq!(mat_mul(&u, &a), h);
        assert_eq!(abs_det(&u), BigInt::one());
    }

    #[test]
    fn snf_of_2468() {
        // snf([[2,4],[6,8]]) = diag(2, 4): d1 = gcd of entries = 2, d1·d2 = |det| = |16-24| = 8.
        let a = imat_from_i64(&[vec![2, 4], vec![6, 8]]);
        let (d, u, v) = snf_with_transforms(&a);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        let prod = mat_mul(&mat_mul(&u, &a), &v);
        assert_eq!(prod[0][0], BigInt::from(2));
        assert_eq!(prod[1][1], BigInt::from(4));
        assert!(prod[0][1].is_zero() && prod[1][0].is_zero());
        assert_eq!(abs_det(&u), BigInt::one());
        assert_eq!(abs_det(&v), BigInt::one());
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = imat_from_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 10]]);
        let d = snf_diagonal(&a);
        for w in d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "{w:?}");
        }
        let mut prod = BigInt::one();
        for x in &d {
            prod *= x;
        }
        assert_eq!(prod, BigInt::from(60));
    }

    #[test]
    fn left_kernel_and_solve() {
        let a = imat_from_i64(&[vec![1, 2], vec![2, 4], vec![0, 3]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(row_is_zero(&row_vec_mul(&k[0], &a)));
        // Solve x·A = (1, 5): row1 + row3 works.
        let sol = solve_left(&a, &[BigInt::from(1), BigInt::from(5)]).unwrap();
        assert_eq!(row_vec_mul(&sol, &a), vec![BigInt::from(1), BigInt::from(5)]);
        // (0, 1) is not in the row span (x·A = (0,1) needs x1+2x2 = 0, 2(x1+2x2)+3x3 = 1).
        assert!(solve_left(&a, &[BigInt::from(0), BigInt::from(1)]).is_none());
    }

    #[test]
    fn hnf_is_idempotent_small_random() {
        // Deterministic pseudo-random small matrices.
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 15) as i64 - 7
        };
        for _ in 0..50 {
            let a: IMat = (0..3)
                .map(|_| (0..3).map(|_| BigInt::from(next())).collect())
                .collect();
            let h1 = hnf(&a);
            if h1.is_empty() {
                continue;
            }
            let h2 = hnf(&h1);
            assert_eq!(h1, h2);
        }
    }
}
