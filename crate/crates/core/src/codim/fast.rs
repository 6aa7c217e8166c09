//! Multilinear left-normed evaluation matrices of the non-unital algebra,
//! one block per variable carrying the `z`.
//!
//! A left-normed monomial is nonzero only when its first variable is a `z`
//! and the remaining variables spell a trace. Columns starting with
//! different variables therefore have disjoint supports, and a block is
//! determined by the parity of its first variable. Inside a block a row is a
//! pair (trace `u`, set `S` of variables sent to `a`), and the column of the
//! arrangement `π` of the other variables meets exactly the rows
//! `(u, {π_p : u_p = a})`.

use std::collections::HashSet;

use super::monomial::next_permutation;
use super::rank::SparseMatrix;
use super::traces::TraceCatalog;
use crate::algebra::{GradingSpec, LETTER_A};

/// The block of columns starting with a variable of parity `z_parity`,
/// the other variables having the given parities. Returns the distinct
/// column vectors (over row ids) and the number of rows.
pub fn block(catalog: &TraceCatalog, grading: GradingSpec, z_parity: u8, others: &[u8]) -> SparseMatrix {
    let len = others.len();
    let traces = catalog.traces(z_parity, len);
    let full: u32 = (1u32 << len) - 1;
    let allow_a: u32 = (0..len).filter(|&v| others[v] == grading.da).map(|v| 1 << v).sum();
    let allow_b: u32 = (0..len).filter(|&v| others[v] == grading.db).map(|v| 1 << v).sum();
    let a_positions: Vec<Vec<usize>> = traces
        .iter()
        .map(|u| (0..len).filter(|&p| u.letters()[p] == LETTER_A).collect())
        .collect();

    let width = 1usize << len;
    let mut ids = vec![u32::MAX; traces.len() * width];
    let mut next_id = 0u32;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut vectors: Vec<Vec<u32>> = Vec::new();

    let mut perm: Vec<u8> = (0..len as u8).collect();
    let mut v: Vec<u32> = Vec::with_capacity(traces.len());
    loop {
        v.clear();
        for (t, pos) in a_positions.iter().enumerate() {
            let mask: u32 = pos.iter().map(|&p| 1u32 << perm[p]).sum();
            if mask & !allow_a != 0 || (full ^ mask) & !allow_b != 0 {
                continue;
            }
            let slot = &mut ids[t * width + mask as usize];
            if *slot == u32::MAX {
                *slot = next_id;
                next_id += 1;
            }
            v.push(*slot);
        }
        v.sort_unstable();
        if !v.is_empty() && !seen.contains(&v) {
            seen.insert(v.clone());
            vectors.push(v.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut m = SparseMatrix::new(next_id as usize);
    for v in vectors {
        m.push_support(v);
    }
    m
}
