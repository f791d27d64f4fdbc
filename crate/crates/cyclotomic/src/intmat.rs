//! Exact integer matrix routines: Bareiss determinants, column-style Hermite
//! normal form and Smith normal form with the left transform tracked.
//!
//! Matrices are dense `Vec<Vec<BigInt>>` in row-major order (`m[i][j]` is row
//! `i`, column `j`). Everything stays in `BigInt`; no rationals, no floats.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k) = (a.len(), b.len());
    let cols = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, cols);
    for i in 0..n {
        for (l, b_row) in b.iter().enumerate().take(k) {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += &a[i][l] * &b_row[j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(c, x)| c * x).sum())
        .collect()
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn det(mat: &Mat) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Bareiss: division by the previous pivot is exact.
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves `M x = v` over the rationals by Cramer's rule and returns the
/// solution only if it is integral. `None` when some coordinate is not an
/// integer; panics never, returns `None` for singular `M` with no solution
/// and `Some` only after verifying `M x == v`.
pub fn solve_integer(m: &Mat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = m.len();
    let d = det(m);
    if d.is_zero() {
        return None;
    }
    let mut x = Vec::with_capacity(n);
    for j in 0..n {
        let mut mj = m.to_vec();
        for i in 0..n {
            mj[i][j] = v[i].clone();
        }
        let dj = det(&mj);
        let (q, r) = dj.div_rem(&d);
        if !r.is_zero() {
            return None;
        }
        x.push(q);
    }
    if mat_vec(m, &x) == v {
        Some(x)
    } else {
        None
    }
}

/// Column-style Hermite normal form of the lattice spanned by `cols`
/// (each of length `dim`).
///
/// Returns the unique `dim x dim` basis with columns upper-triangular,
/// positive diagonal, and every entry right of a diagonal reduced into
/// `[0, diagonal)`. `None` if the columns do not span a full-rank lattice.
pub fn hnf_columns(cols: &[Vec<BigInt>], dim: usize) -> Option<Mat> {
    let mut work: Vec<Vec<BigInt>> = cols.iter().filter(|c| !is_zero_vec(c)).cloned().collect();
    let mut pivots: Vec<Vec<BigInt>> = vec![Vec::new(); dim];
    // Assign the pivot for each row from the bottom up so the pivot columns
    // come out upper-triangular.
    for row in (0..dim).rev() {
        // Combine columns with gcd steps until one nonzero entry remains
        // in this row.
        loop {
            let mut nz: Vec<usize> = (0..work.len())
                .filter(|&c| !work[c][row].is_zero())
                .collect();
            if nz.len() <= 1 {
                break;
            }
            // Reduce the larger entry by the smaller (Euclid on columns).
            nz.sort_by(|&a, &b| work[a][row].abs().cmp(&work[b][row].abs()));
            let (small, big) = (nz[0], nz[1]);
            let q: BigInt = work[big][row].div_floor(&work[small][row]);
            for i in 0..dim {
                let t = &q * &work[small][i];
                work[big][i] -= t;
            }
            work.retain(|c| !is_zero_vec(c));
        }
        if let Some(c) = (0..work.len()).find(|&c| !work[c][row].is_zero()) {
            let mut p = work.swap_remove(c);
            if p[row].is_negative() {
                for e in p.iter_mut() {
                    *e = -std::mem::take(e);
                }
            }
            pivots[row] = p;
        }
    }
    if pivots.iter().any(Vec::is_empty) {
        return None;
    }
    // hnf[i][j]: column j is the pivot found for row j.
    let mut hnf = zeros(dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            hnf[i][j] = pivots[j][i].clone();
        }
    }
    // Reduce entries right of each diagonal into [0, diag).
    for j in 0..dim {
        for i in (0..j).rev() {
            let q: BigInt = hnf[i][j].div_floor(&hnf[i][i]);
            if q.is_zero() {
                continue;
            }
            for r in 0..=i {
                let t = &q * &hnf[r][i];
                hnf[r][j] -= t;
            }
        }
    }
    Some(hnf)
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Smith normal form `U * H * V = diag(d_1, ..., d_n)` with `d_k | d_{k+1}`.
///
/// Only the left transform is reported: returns `(diag, u, u_inv)` where `u`
/// is unimodular and `u_inv` its exact inverse. The right transform is
/// applied internally but not needed by callers (column operations do not
/// change the lattice spanned by the columns).
pub fn snf_with_left_transform(h: &Mat) -> (Vec<BigInt>, Mat, Mat) {
    let n = h.len();
    let mut b = h.to_vec();
    let mut u = identity(n);
    let mut u_inv = identity(n);

    // Row ops keep u, u_inv in sync: b <- E b, u <- E u, u_inv <- u_inv E^-1.
    fn row_swap(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, r: usize, s: usize) {
        b.swap(r, s);
        u.swap(r, s);
        for row in u_inv.iter_mut() {
            row.swap(r, s);
        }
    }
    fn row_addmul(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, dst: usize, src: usize, q: &BigInt) {
        let n = b.len();
        for j in 0..n {
            let t = q * &b[src][j];
            b[dst][j] += t;
            let t = q * &u[src][j];
            u[dst][j] += t;
        }
        for row in u_inv.iter_mut() {
            let t = q * &row[dst];
            row[src] -= t;
        }
    }
    fn row_negate(b: &mut Mat, u: &mut Mat, u_inv: &mut Mat, r: usize) {
        for e in b[r].iter_mut() {
            *e = -std::mem::take(e);
        }
        for e in u[r].iter_mut() {
            *e = -std::mem::take(e);
        }
        for row in u_inv.iter_mut() {
            row[r] = -std::mem::take(&mut row[r]);
        }
    }
    fn col_swap(b: &mut Mat, r: usize, s: usize) {
        for row in b.iter_mut() {
            row.swap(r, s);
        }
    }
    fn col_addmul(b: &mut Mat, dst: usize, src: usize, q: &BigInt) {
        for row in b.iter_mut() {
            let t = q * &row[src];
            row[dst] += t;
        }
    }

    for k in 0..n {
        'pivot: loop {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if b[i][j].is_zero() {
                        continue;
                    }
                    if best
                        .map(|(bi, bj)| b[i][j].abs() < b[bi][bj].abs())
                        .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            if pi != k {
                row_swap(&mut b, &mut u, &mut u_inv, k, pi);
            }
            if pj != k {
                col_swap(&mut b, k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if b[i][k].is_zero() {
                    continue;
                }
                let q = -b[i][k].div_floor(&b[k][k]);
                row_addmul(&mut b, &mut u, &mut u_inv, i, k, &q);
                if !b[i][k].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            for j in k + 1..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let q = -b[k][j].div_floor(&b[k][k]);
                col_addmul(&mut b, j, k, &q);
                if !b[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility: the pivot must divide the trailing block.
            for i in k + 1..n {
                for j in k + 1..n {
                    if !b[i][j].mod_floor(&b[k][k]).is_zero() {
                        let one = BigInt::one();
                        row_addmul(&mut b, &mut u, &mut u_inv, k, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if b[k][k].is_negative() {
            row_negate(&mut b, &mut u, &mut u_inv, k);
        }
    }
    let diag = (0..n).map(|k| b[k][k].clone()).collect();
    (diag, u, u_inv)
}
