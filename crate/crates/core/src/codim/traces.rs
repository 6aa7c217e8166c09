//! The distinct trace words of each length, split by the parity of the start.

use std::collections::BTreeSet;

use crate::algebra::{
    self, graded_start_keys_with_window, AlgebraSpec, GradedStartKey, GradingSpec, LETTER_A, LETTER_B,
};
use crate::error::Result;
use crate::words::LetterWord;

/// The trace of `len` letters from the start described by `key`, read off
/// its window of segment lengths.
pub fn trace_from_key(m: u32, key: &GradedStartKey, len: usize) -> Vec<u8> {
    let window = key.window.letters();
    let mut seg = 0usize;
    let mut j = key.j;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let k = m + window[seg] as u32;
        if j < k {
            out.push(LETTER_A);
            j += 1;
        } else {
            out.push(LETTER_B);
            seg += 1;
            j = 1;
        }
    }
    out
}

/// Distinct traces of length `0..=n−1` from starts of each parity.
#[derive(Clone, Debug)]
pub struct TraceCatalog {
    n: usize,
    grading: GradingSpec,
    traces: [Vec<Vec<LetterWord>>; 2],
}

impl TraceCatalog {
    pub fn build(
        spec: &AlgebraSpec,
        grading: GradingSpec,
        n: usize,
        scan_budget: usize,
        min_window: usize,
    ) -> Result<Self> {
        let keys = graded_start_keys_with_window(spec, n, scan_budget, min_window)?;
        let mut sets: [Vec<BTreeSet<LetterWord>>; 2] = [vec![BTreeSet::new(); n], vec![BTreeSet::new(); n]];
        for key in &keys {
            let p = key.parity(grading) as usize;
            let full = trace_from_key(spec.m(), key, n - 1);
            for len in 0..n {
                sets[p][len].insert(LetterWord::new(full[..len].to_vec())?);
            }
        }
        let traces = sets.map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect());
        Ok(TraceCatalog { n, grading, traces })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> GradingSpec {
        self.grading
    }

    /// Distinct traces of length `len < n` from starts of the given parity.
    pub fn traces(&self, parity: u8, len: usize) -> &[LetterWord] {
        &self.traces[parity as usize][len]
    }

    /// Whether some `z`-start has the given parity.
    pub fn has_start(&self, parity: u8) -> bool {
        !self.traces[parity as usize][0].is_empty()
    }

    /// A start `z_j^{(i)}` of the given parity whose trace begins with `u`,
    /// searched among `i ≤ limit`.
    pub fn representative(&self, spec: &AlgebraSpec, parity: u8, u: &LetterWord, limit: u64) -> Option<(u64, u32)> {
        for i in 1..=limit {
            for j in 1..=spec.k(i) {
                let z = algebra::BasisElement::z(i, j);
                if algebra::element_parity(spec, self.grading, z) != parity {
                    continue;
                }
                if algebra::trace_word(spec, i, j, u.len()).ok()? == *u {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Number of `a` and `b` letters in a trace.
pub fn letter_counts(u: &[u8]) -> (usize, usize) {
    let b = u.iter().filter(|&&l| l == LETTER_B).count();
    (u.len() - b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::WordSource;

    #[test]
    fn catalog_matches_direct_traces() {
        let spec = AlgebraSpec::new(2, WordSource::fibonacci()).unwrap();
        let g = GradingSpec::main();
        let n = 6;
        let cat = TraceCatalog::build(&spec, g, n, 100_000, 32).unwrap();
        let mut direct: [BTreeSet<LetterWord>; 2] = [BTreeSet::new(), BTreeSet::new()];
        for i in 1..200u64 {
            for j in 1..=spec.k(i) {
                let p = algebra::element_parity(&spec, g, algebra::BasisElement::z(i, j));
                direct[p as usize].insert(algebra::trace_word(&spec, i, j, n - 1).unwrap());
            }
        }
        for p in 0..2u8 {
            let got: BTreeSet<_> = cat.traces(p, n - 1).iter().cloned().collect();
            assert_eq!(got, direct[p as usize]);
        }
        let u = &cat.traces(1, 3)[0];
        let (i, j) = cat.representative(&spec, 1, u, 100).unwrap();
        assert_eq!(algebra::trace_word(&spec, i, j, 3).unwrap(), *u);
    }
}
