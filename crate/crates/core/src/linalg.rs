//! Row reduction and subspace iteration over the prime field F_p.
//!
//! Vectors are `Vec<u32>` with entries in `0..p`. All routines assume `p` is
//! prime; callers check this at their API boundary.

use num_bigint::BigUint;
use num_traits::One;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // extended Euclid on i64
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

/// `dst += c * src` componentwise.
#[inline]
pub fn axpy(dst: &mut [u32], c: u32, src: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + c as u64 * s as u64) % p as u64) as u32;
    }
}

/// Brings `rows` into reduced row echelon form in place and drops zero rows.
///
/// Pivots are scaled to 1, pivot columns are cleared above and below, and
/// rows are ordered by pivot column. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = inv_mod(rows[top][col], p);
        for x in rows[top].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && row[col] != 0 {
                let c = neg_mod(row[col], p);
                axpy(row, c, &pivot_row, p);
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` is in the span.
pub fn reduce(basis: &[Vec<u32>], pivots: &[usize], v: &[u32], p: u32) -> Vec<u32> {
    let mut out = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        if out[col] != 0 {
            let c = neg_mod(out[col], p);
            axpy(&mut out, c, row, p);
        }
    }
    out
}

/// Basis of `{ x : row . x = 0 for all rows }` given an RREF basis.
pub fn nullspace(basis: &[Vec<u32>], pivots: &[usize], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in basis.iter().zip(pivots) {
            v[pc] = neg_mod(row[free], p);
        }
        out.push(v);
    }
    out
}

/// Number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Free (non-pivot, right-of-pivot) positions of an RREF matrix with the
/// given pivot columns.
pub fn free_positions(pivots: &[usize], ncols: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..ncols {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Calls `f` on every RREF matrix with the given pivot pattern.
///
/// Iteration is an odometer over the free positions, so the visiting order
/// is deterministic. `f` returns `false` to stop early.
pub fn for_each_rref<F>(pivots: &[usize], ncols: usize, p: u32, mut f: F)
where
    F: FnMut(&[Vec<u32>]) -> bool,
{
    let k = pivots.len();
    let mut m = vec![vec![0u32; ncols]; k];
    for (r, &c) in pivots.iter().enumerate() {
        m[r][c] = 1;
    }
    let free = free_positions(pivots, ncols);
    loop {
        if !f(&m) {
            return;
        }
        // increment odometer, last free position fastest
        let mut i = free.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let (r, c) = free[i];
            m[r][c] += 1;
            if m[r][c] < p {
                break;
            }
            m[r][c] = 0;
        }
    }
}
