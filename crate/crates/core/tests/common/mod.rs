//! Independent oracles: brute-force codimensions with no pruning and exact
//! rational elimination, and standard Young tableau enumeration.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use codim_lab::algebra::{element_parity, evaluate_tree, AlgebraSpec, BasisElement, GradingSpec};
use codim_lab::words::WordSource;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn fib() -> AlgebraSpec {
    AlgebraSpec::new(2, WordSource::fibonacci()).unwrap()
}

pub fn periodic0() -> AlgebraSpec {
    AlgebraSpec::new(2, WordSource::Periodic("0".parse().unwrap())).unwrap()
}

/// `a`, `b`, every `z_j^{(i)}` with `i ≤ imax`, and the unit when `unital`.
pub fn basis_pool(spec: &AlgebraSpec, imax: u64, unital: bool) -> Vec<BasisElement> {
    let mut pool = vec![BasisElement::A, BasisElement::B];
    for i in 1..=imax {
        for j in 1..=spec.k(i) {
            pool.push(BasisElement::z(i, j));
        }
    }
    if unital {
        pool.push(BasisElement::One);
    }
    pool
}

/// Every full binary tree whose leaves are the variables `vars` in some order.
pub fn monomials(vars: &[usize]) -> Vec<Tree<usize>> {
    let mut out = Vec::new();
    for perm in permutations(vars) {
        out.extend(bracketings(&perm));
    }
    out
}

#[derive(Clone, Debug)]
pub enum Tree<T> {
    Leaf(T),
    Node(Box<Tree<T>>, Box<Tree<T>>),
}

fn bracketings(leaves: &[usize]) -> Vec<Tree<usize>> {
    if leaves.len() == 1 {
        return vec![Tree::Leaf(leaves[0])];
    }
    let mut out = Vec::new();
    for split in 1..leaves.len() {
        for l in bracketings(&leaves[..split]) {
            for r in bracketings(&leaves[split..]) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn substitute(t: &Tree<usize>, values: &[BasisElement]) -> codim_lab::algebra::Tree {
    match t {
        Tree::Leaf(v) => codim_lab::algebra::Tree::leaf(values[*v]),
        Tree::Node(l, r) => codim_lab::algebra::Tree::node(substitute(l, values), substitute(r, values)),
    }
}

/// Rank over ℚ by plain Gaussian elimination.
pub fn rational_rank(rows: &BTreeSet<Vec<u8>>, ncols: usize) -> usize {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for row in rows {
        let mut v: Vec<BigRational> = row
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        for (pivot, b) in &basis {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone() / &b[*pivot];
                for c in 0..ncols {
                    v[c] = &v[c] - &f * &b[c];
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / &v[p];
            let v: Vec<BigRational> = v.into_iter().map(|x| x * &inv).collect();
            basis.push((p, v));
            if basis.len() == ncols {
                break;
            }
        }
    }
    basis.len()
}

/// `c_{k,nk}` by evaluating every multilinear monomial on every assignment
/// of homogeneous basis elements from the pool: one row per (assignment,
/// result element). With the trivial grading and `nk = 0` this is `c_k`.
pub fn brute_partial_codim(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    k: usize,
    nk: usize,
    unital: bool,
    imax: u64,
) -> usize {
    let n = k + nk;
    let vars: Vec<usize> = (0..n).collect();
    let monos = monomials(&vars);
    let pool = basis_pool(spec, imax, unital);
    let parity = |e: &BasisElement| match e {
        BasisElement::One => 0,
        _ => element_parity(spec, grading, *e),
    };
    let even: Vec<BasisElement> = pool.iter().copied().filter(|e| parity(e) == 0).collect();
    let odd: Vec<BasisElement> = pool.iter().copied().filter(|e| parity(e) == 1).collect();
    let choices: Vec<&[BasisElement]> = (0..n).map(|v| if v < k { &even[..] } else { &odd[..] }).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return 0;
    }

    let mut rows = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let values: Vec<BasisElement> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mut by_target: HashMap<BasisElement, Vec<u8>> = HashMap::new();
        for (c, m) in monos.iter().enumerate() {
            if let Some(e) = evaluate_tree(spec, &substitute(m, &values), unital).unwrap() {
                by_target.entry(e).or_insert_with(|| vec![0; monos.len()])[c] = 1;
            }
        }
        rows.extend(by_target.into_values());
        // Odometer over assignments.
        let mut pos = 0;
        loop {
            if pos == n {
                return rational_rank(&rows, monos.len());
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn brute_codim(spec: &AlgebraSpec, n: usize, unital: bool, imax: u64) -> usize {
    brute_partial_codim(spec, GradingSpec::trivial(), n, 0, unital, imax)
}

/// Number of standard Young tableaux of shape `parts`, by removing corners.
pub fn syt_count(parts: &[usize]) -> u128 {
    fn go(parts: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.is_empty() {
            return 1;
        }
        if let Some(&v) = memo.get(parts) {
            return v;
        }
        let mut total = 0;
        for r in 0..parts.len() {
            let is_corner = r + 1 == parts.len() || parts[r + 1] < parts[r];
            if is_corner {
                let mut p = parts.clone();
                p[r] -= 1;
                total += go(&mut p, memo);
            }
        }
        memo.insert(parts.clone(), total);
        total
    }
    go(&mut parts.to_vec(), &mut HashMap::new())
}
