//! Exact rank of sparse integer matrices.
//!
//! [`rank_exact`] certifies the rank from both sides:
//!
//! * a Gauss–Jordan elimination modulo the prime `p = 2^61 − 1` gives
//!   `rank_p ≤ rank_Q`;
//! * the reduced echelon form yields `dim − rank_p` candidate vectors
//!   orthogonal to every row; they are lifted to integers by rational
//!   reconstruction and checked against every row in exact arithmetic,
//!   which gives `rank_Q ≤ rank_p`.
//!
//! If the certificate cannot be produced, the result falls back to
//! fraction-free (Bareiss) elimination over big integers, which is also
//! exposed as [`rank_fraction_free`] for cross-checking.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A sparse integer matrix stored by rows; entries are `(column, value)`
/// with strictly increasing columns and nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Adds a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed and zeros dropped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (u32, i64)>) {
        let mut row: Vec<(u32, i64)> = entries.into_iter().collect();
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!((c as usize) < self.ncols, "column {c} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    /// Adds a 0/1 row with ones at the given columns.
    pub fn push_support(&mut self, support: impl IntoIterator<Item = u32>) {
        self.push_row(support.into_iter().map(|c| (c, 1)));
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c as u32, v)));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(u32, i64)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                cols[c as usize].push((r as u32, v));
            }
        }
        SparseMatrix {
            ncols: self.rows.len(),
            rows: cols,
        }
    }
}

const P: u64 = (1 << 61) - 1;

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    add_mod(lo, hi)
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(v: i64) -> u64 {
    let r = v.rem_euclid(P as i64) as u64;
    r % P
}

/// Smallest `n/d` with `|n|, d ≤ √(p/2)` and `n ≡ a·d (mod p)`.
fn rational_reconstruct(a: u64) -> Option<(i128, i128)> {
    let bound: i128 = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some((n, d))
}

/// Reduced row echelon form modulo `p`, stored on the non-pivot coordinates
/// only: basis vector `b` has a 1 at its pivot, zeros at every other pivot,
/// and the stored values at the free coordinates.
struct ModRref {
    free: Vec<u32>,
    pos_in_free: Vec<u32>,
    pivot_of: Vec<u32>,
    basis: Vec<Vec<u64>>,
    acc: Vec<u64>,
}

const NONE: u32 = u32::MAX;

impl ModRref {
    fn new(dim: usize) -> Self {
        ModRref {
            free: (0..dim as u32).collect(),
            pos_in_free: (0..dim as u32).collect(),
            pivot_of: vec![NONE; dim],
            basis: Vec::new(),
            acc: Vec::new(),
        }
    }

    /// Adds a vector; returns whether it was independent.
    fn insert(&mut self, v: &[(u32, i64)]) -> bool {
        let f = self.free.len();
        if f == 0 {
            return false;
        }
        self.acc.clear();
        self.acc.resize(f, 0);
        for &(s, val) in v {
            let c = to_mod(val);
            let piv = self.pivot_of[s as usize];
            if piv == NONE {
                let t = self.pos_in_free[s as usize] as usize;
                self.acc[t] = add_mod(self.acc[t], c);
            } else {
                // subtract c times the basis vector with this pivot
                let b = &self.basis[piv as usize];
                if c == 1 {
                    for (a, &x) in self.acc.iter_mut().zip(b) {
                        *a = sub_mod(*a, x);
                    }
                } else {
                    for (a, &x) in self.acc.iter_mut().zip(b) {
                        *a = sub_mod(*a, mul_mod(c, x));
                    }
                }
            }
        }
        let Some(t) = self.acc.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(self.acc[t], P - 2);
        for a in self.acc.iter_mut() {
            *a = mul_mod(*a, inv);
        }
        let acc = std::mem::take(&mut self.acc);
        for b in self.basis.iter_mut() {
            let c = b[t];
            if c != 0 {
                for (x, &y) in b.iter_mut().zip(&acc) {
                    *x = sub_mod(*x, mul_mod(c, y));
                }
            }
        }
        let mut acc = acc;
        // retire free position t
        let coord = self.free[t];
        for b in self.basis.iter_mut() {
            b.swap_remove(t);
        }
        acc.swap_remove(t);
        self.free.swap_remove(t);
        if t < self.free.len() {
            self.pos_in_free[self.free[t] as usize] = t as u32;
        }
        self.pos_in_free[coord as usize] = NONE;
        self.pivot_of[coord as usize] = self.basis.len() as u32;
        self.basis.push(acc);
        true
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer vectors spanning the orthogonal complement of the row space,
    /// stored by coordinate: `kernel[s][t]` is entry `s` of kernel vector `t`.
    /// Kernel vector `t` is 1 at free coordinate `t` and `−b[t]` at the pivot
    /// of each basis vector `b`, scaled to clear denominators.
    fn integer_kernel(&self) -> Option<Vec<Vec<i64>>> {
        let f = self.free.len();
        let dim = self.pivot_of.len();
        let mut coord_of = vec![0usize; self.basis.len()];
        for (s, &p) in self.pivot_of.iter().enumerate() {
            if p != NONE {
                coord_of[p as usize] = s;
            }
        }
        let mut fracs: Vec<Vec<(i128, i128)>> = Vec::with_capacity(self.basis.len());
        let mut den: Vec<i128> = vec![1; f];
        for b in &self.basis {
            let mut row = Vec::with_capacity(f);
            for t in 0..f {
                let (n, d) = rational_reconstruct(sub_mod(0, b[t]))?;
                den[t] = den[t].lcm(&d);
                if den[t] > i64::MAX as i128 {
                    return None;
                }
                row.push((n, d));
            }
            fracs.push(row);
        }
        let mut kernel = vec![vec![0i64; f]; dim];
        for t in 0..f {
            kernel[self.free[t] as usize][t] = den[t] as i64;
        }
        for (bi, row) in fracs.iter().enumerate() {
            for (t, &(n, d)) in row.iter().enumerate() {
                let scaled = n.checked_mul(den[t] / d)?;
                kernel[coord_of[bi]][t] = i64::try_from(scaled).ok()?;
            }
        }
        Some(kernel)
    }
}

/// Checks that every vector is orthogonal to every kernel vector, exactly.
fn verify_kernel(vectors: &[Vec<(u32, i64)>], kernel: &[Vec<i64>], f: usize) -> bool {
    let mut acc = vec![0i128; f];
    for v in vectors {
        acc.iter_mut().for_each(|a| *a = 0);
        for &(s, val) in v {
            let k = &kernel[s as usize];
            let val = val as i128;
            for (a, &x) in acc.iter_mut().zip(k) {
                *a += val * x as i128;
            }
        }
        if acc.iter().any(|&a| a != 0) {
            return false;
        }
    }
    true
}

/// Rank modulo `2^61 − 1` of the row vectors; a lower bound for the rank
/// over the rationals.
pub fn rank_mod_p(m: &SparseMatrix) -> usize {
    let mut rref = ModRref::new(m.ncols);
    for row in &m.rows {
        rref.insert(row);
    }
    rref.rank()
}

/// Reference rank over the rationals by fraction-free Gaussian elimination
/// on a dense big-integer copy of the matrix.
pub fn rank_fraction_free(m: &SparseMatrix) -> usize {
    let t;
    let m = if m.ncols > m.nrows() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let ncols = m.ncols;
    let mut a: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); ncols];
            for &(c, v) in row {
                dense[c as usize] = BigInt::from(v);
            }
            dense
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = (pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

fn check_deadline(deadline: Option<Instant>, seconds: f64) -> Result<()> {
    if let Some(d) = deadline {
        if Instant::now() > d {
            return Err(Error::TimeBudget {
                seconds,
                stage: "rank computation".into(),
            });
        }
    }
    Ok(())
}

/// Time limit for [`rank_exact`]: the instant and the budget it came from.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline {
    pub at: Option<Instant>,
    pub seconds: f64,
}

/// Exact rank over the rationals, certified as described in the module docs.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    rank_exact_with_deadline(m, Deadline::default()).expect("no deadline set")
}

/// [`rank_exact`] that aborts once the deadline has passed.
pub fn rank_exact_with_deadline(m: &SparseMatrix, deadline: Deadline) -> Result<usize> {
    let t;
    let m = if m.ncols > m.nrows() {
        t = m.transpose();
        &t
    } else {
        m
    };
    let mut rref = ModRref::new(m.ncols);
    for (idx, row) in m.rows.iter().enumerate() {
        if idx % 1024 == 0 {
            check_deadline(deadline.at, deadline.seconds)?;
        }
        rref.insert(row);
    }
    let r = rref.rank();
    if r == m.ncols {
        return Ok(r);
    }
    if let Some(kernel) = rref.integer_kernel() {
        if verify_kernel(&m.rows, &kernel, rref.free.len()) {
            return Ok(r);
        }
    }
    check_deadline(deadline.at, deadline.seconds)?;
    Ok(rank_fraction_free(m))
}
