//! Column spaces: monomials as (word over variables, bracketing shape).

use serde::Serialize;

/// How monomials are bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnMode {
    /// Only `(((x_1 x_2) x_3) ⋯ ) x_n`.
    LeftNormed,
    /// Every full binary bracketing.
    FullTrees,
}

/// A full binary tree in postorder: `false` is a leaf, `true` an internal
/// node combining the two most recent values.
pub type Shape = Vec<bool>;

/// All full binary trees with `n` leaves, in a fixed order starting with the
/// left-normed tree. There are `Catalan(n − 1)` of them.
pub fn shapes(n: usize) -> Vec<Shape> {
    assert!(n >= 1);
    let mut memo: Vec<Vec<Shape>> = vec![Vec::new(), vec![vec![false]]];
    for size in 2..=n {
        let mut out = Vec::new();
        for left in (1..size).rev() {
            for l in &memo[left] {
                for r in &memo[size - left] {
                    let mut s = l.clone();
                    s.extend_from_slice(r);
                    s.push(true);
                    out.push(s);
                }
            }
        }
        memo.push(out);
    }
    memo.swap_remove(n)
}

/// The left-normed shape with `n` leaves.
pub fn left_normed_shape(n: usize) -> Shape {
    let mut s = vec![false];
    for _ in 1..n {
        s.push(false);
        s.push(true);
    }
    s
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// Number of distinct arrangements of a multiset with the given multiplicities.
pub fn multinomial(counts: &[usize]) -> u128 {
    let mut total = 0usize;
    let mut r: u128 = 1;
    for &c in counts {
        for i in 1..=c {
            total += 1;
            r = r * total as u128 / i as u128;
        }
    }
    r
}

/// Rearranges `v` into the next permutation in lexicographic order; returns
/// `false` (leaving `v` sorted) after the last one. Handles repeated entries.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct arrangements of the multiset in lexicographic order.
pub fn arrangements(multiset: &[u8]) -> Vec<Vec<u8>> {
    let mut v = multiset.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// A variable of a monomial space: its parity and its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Variable {
    pub parity: u8,
    pub degree: usize,
}

/// Monomials in the given variables, each of its prescribed degree.
/// Columns are indexed `word_index · #shapes + shape_index` with words in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpace {
    pub mode: ColumnMode,
    pub variables: Vec<Variable>,
}

impl MonomialSpace {
    /// Multilinear space on `k` even and `nk` odd variables.
    pub fn multilinear(mode: ColumnMode, k: usize, nk: usize) -> Self {
        let variables = (0..k + nk)
            .map(|v| Variable {
                parity: u8::from(v >= k),
                degree: 1,
            })
            .collect();
        MonomialSpace { mode, variables }
    }

    pub fn degree(&self) -> usize {
        self.variables.iter().map(|v| v.degree).sum()
    }

    pub fn shapes(&self) -> Vec<Shape> {
        match self.mode {
            ColumnMode::LeftNormed => vec![left_normed_shape(self.degree())],
            ColumnMode::FullTrees => shapes(self.degree()),
        }
    }

    /// The multiset of variable indices, one entry per occurrence.
    pub fn letters(&self) -> Vec<u8> {
        self.variables
            .iter()
            .enumerate()
            .flat_map(|(i, v)| std::iter::repeat_n(i as u8, v.degree))
            .collect()
    }

    pub fn column_count(&self) -> u128 {
        let n = self.degree();
        let words = multinomial(&self.variables.iter().map(|v| v.degree).collect::<Vec<_>>());
        match self.mode {
            ColumnMode::LeftNormed => words,
            ColumnMode::FullTrees => words * catalan(n.saturating_sub(1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts_match_shapes() {
        for n in 1..=7 {
            assert_eq!(shapes(n).len() as u128, catalan(n - 1));
        }
        assert_eq!(shapes(4)[0], left_normed_shape(4));
    }

    #[test]
    fn counting() {
        assert_eq!(factorial(6), 720);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(arrangements(&[0, 0, 1]).len(), 3);
        assert_eq!(arrangements(&[0, 1, 2, 3]).len(), 24);
        let fs = MonomialSpace::multilinear(ColumnMode::FullTrees, 3, 3);
        assert_eq!(fs.column_count(), 720 * 42);
        let ln = MonomialSpace::multilinear(ColumnMode::LeftNormed, 4, 0);
        assert_eq!(ln.column_count(), 24);
    }
}
