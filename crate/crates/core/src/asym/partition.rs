//! Integer partitions and the hook length formula.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// A partition `λ_1 ≥ λ_2 ≥ … ≥ λ_t ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// Length of column `c` (0-based) of the diagram.
    fn column(&self, c: usize) -> usize {
        self.0.iter().filter(|&&p| p > c).count()
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                out.push((len - c - 1) + (self.column(c) - r - 1) + 1);
            }
        }
        out
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `d_λ = |λ|! / Π hooks`.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    let hooks: BigUint = lambda.hooks().into_iter().map(BigUint::from).product();
    fact / hooks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(parts: &[usize]) -> BigUint {
        hook_dim(&Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(dim(&[5]), BigUint::from(1u32));
        assert_eq!(dim(&[2, 1]), BigUint::from(2u32));
        assert_eq!(dim(&[2, 2]), BigUint::from(2u32));
        assert_eq!(dim(&[3, 1, 1]), BigUint::from(6u32));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(partitions_of(5).len(), 7);
    }
}
