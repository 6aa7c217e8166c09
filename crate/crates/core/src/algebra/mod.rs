//! The algebra `A(m, w)` with basis `a, b, z_j^{(i)}` (`1 ≤ j ≤ k_i = m + w_i`)
//! and its unital extension.
//!
//! The only nonzero products of basis elements are
//! `z_j^{(i)} a = z_{j+1}^{(i)}` for `j < k_i` and `z_{k_i}^{(i)} b = z_1^{(i+1)}`.
//! The algebra is infinite-dimensional; basis elements are validated lazily
//! against `k_i`.

mod grading;

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{LetterWord, QuadraticNumber, WordSource};

pub use grading::{
    element_parity, graded_start_keys, graded_start_keys_with_window, start_keys, GradedStartKey, GradingSpec, StartKey,
};

/// Letter code of `a` in trace words.
pub const LETTER_A: u8 = 0;
/// Letter code of `b` in trace words.
pub const LETTER_B: u8 = 1;

/// The pair `(m, w)` defining `A(m, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    m: u32,
    word: WordSource,
}

impl AlgebraSpec {
    pub fn new(m: u32, word: WordSource) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("m must be at least 2, got {m}")));
        }
        Ok(AlgebraSpec { m, word })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn word(&self) -> &WordSource {
        &self.word
    }

    /// `k_i = m + w_i`.
    pub fn k(&self, i: u64) -> u32 {
        self.m + self.word.letter(i) as u32
    }

    /// `β = 1/(m + α)` where `α` is the slope of `w`.
    pub fn beta(&self) -> QuadraticNumber {
        self.word
            .slope()
            .number()
            .add(&QuadraticNumber::from_integer(self.m as i128))
            .recip()
    }

    /// Checks that `e` is a basis element of `A` (or of `A#` when `unital`).
    pub fn validate(&self, e: &BasisElement, unital: bool) -> Result<()> {
        match *e {
            BasisElement::A | BasisElement::B => Ok(()),
            BasisElement::One if unital => Ok(()),
            BasisElement::One => Err(Error::invalid("the unit is only available in unital mode")),
            BasisElement::Z { i, j } => {
                if i == 0 {
                    return Err(Error::invalid("segment index i starts at 1"));
                }
                let k = self.k(i);
                if j == 0 || j > k {
                    return Err(Error::invalid(format!(
                        "z_{j}^({i}) does not exist: 1 <= j <= k_{i} = {k}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// `k_i` for the given algebra.
pub fn k_index(spec: &AlgebraSpec, i: u64) -> u32 {
    spec.k(i)
}

/// A basis element of `A(m, w)` or the adjoined unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    A,
    B,
    Z { i: u64, j: u32 },
    One,
}

impl BasisElement {
    pub fn z(i: u64, j: u32) -> Self {
        BasisElement::Z { i, j }
    }

    pub fn letter(code: u8) -> Self {
        if code == LETTER_A {
            BasisElement::A
        } else {
            BasisElement::B
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::A => f.write_str("a"),
            BasisElement::B => f.write_str("b"),
            BasisElement::Z { i, j } => write!(f, "z_{j}^({i})"),
            BasisElement::One => f.write_str("1"),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Product of two valid basis elements; `None` is the zero element.
fn product_unchecked(spec: &AlgebraSpec, e1: BasisElement, e2: BasisElement) -> Option<BasisElement> {
    use BasisElement::*;
    match (e1, e2) {
        (One, x) | (x, One) => Some(x),
        (Z { i, j }, A) if j < spec.k(i) => Some(Z { i, j: j + 1 }),
        (Z { i, j }, B) if j == spec.k(i) => Some(Z { i: i + 1, j: 1 }),
        _ => None,
    }
}

/// `e1 · e2`, or `None` for zero. Errors only on invalid elements.
pub fn product(spec: &AlgebraSpec, e1: BasisElement, e2: BasisElement, unital: bool) -> Result<Option<BasisElement>> {
    spec.validate(&e1, unital)?;
    spec.validate(&e2, unital)?;
    Ok(product_unchecked(spec, e1, e2))
}

/// The unique `u ∈ {a, b}^t` with `z_j^{(i)} · u ≠ 0` (a ↦ 0, b ↦ 1).
pub fn trace_word(spec: &AlgebraSpec, i: u64, j: u32, t: usize) -> Result<LetterWord> {
    spec.validate(&BasisElement::z(i, j), false)?;
    let (mut i, mut j) = (i, j);
    let mut letters = Vec::with_capacity(t);
    let mut k = spec.k(i);
    for _ in 0..t {
        if j < k {
            letters.push(LETTER_A);
            j += 1;
        } else {
            letters.push(LETTER_B);
            i += 1;
            j = 1;
            k = spec.k(i);
        }
    }
    LetterWord::new(letters)
}

/// Left-normed product `(((start · l_1) · l_2) ⋯ ) · l_t` with letters a ↦ 0, b ↦ 1.
pub fn evaluate_left_normed(spec: &AlgebraSpec, start: BasisElement, letters: &[u8]) -> Result<Option<BasisElement>> {
    spec.validate(&start, true)?;
    let mut acc = start;
    for &l in letters {
        match product_unchecked(spec, acc, BasisElement::letter(l)) {
            Some(e) => acc = e,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// A left-normed product `z_j^{(i)} a^{s_0} b a^{s_1} b ⋯ b a^{s_{r+1}}`
/// split into its runs of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceDecomposition {
    pub start: BasisElement,
    pub letters: LetterWord,
    /// Runs of `a` separated by the `b`s: `s_0, …, s_{r+1}`.
    pub segments: Vec<usize>,
    /// Number of `b` letters; `r + 1` when positive.
    pub b_steps: usize,
    pub end: Option<BasisElement>,
}

impl TraceDecomposition {
    /// Number of interior runs `r`, defined when at least one `b` occurs.
    pub fn r(&self) -> Option<usize> {
        self.b_steps.checked_sub(1)
    }

    /// For a nonzero product: `s_0 = k_i − j` (when a `b` follows),
    /// `s_l = k_{i+l} − 1` for the interior runs, and the end element is
    /// `z_{1+s_{r+1}}^{(i+r+1)}`.
    pub fn has_expected_shape(&self, spec: &AlgebraSpec) -> bool {
        let (i, j) = match self.start {
            BasisElement::Z { i, j } => (i, j as usize),
            _ => return false,
        };
        let Some(end) = self.end else { return false };
        let last = *self.segments.last().unwrap();
        if self.b_steps == 0 {
            return end == BasisElement::z(i, (j + last) as u32);
        }
        if self.segments[0] != spec.k(i) as usize - j {
            return false;
        }
        for l in 1..self.b_steps {
            if self.segments[l] != spec.k(i + l as u64) as usize - 1 {
                return false;
            }
        }
        end == BasisElement::z(i + self.b_steps as u64, 1 + last as u32)
    }
}

/// Decompose the product of `z_j^{(i)}` with the given letters.
pub fn trace_decomposition(spec: &AlgebraSpec, i: u64, j: u32, letters: &LetterWord) -> Result<TraceDecomposition> {
    let start = BasisElement::z(i, j);
    let end = evaluate_left_normed(spec, start, letters.letters())?;
    let mut segments = vec![0usize];
    for &l in letters.letters() {
        if l == LETTER_A {
            *segments.last_mut().unwrap() += 1;
        } else {
            segments.push(0);
        }
    }
    Ok(TraceDecomposition {
        start,
        letters: letters.clone(),
        b_steps: segments.len() - 1,
        segments,
        end,
    })
}

/// A full binary tree with basis elements at the leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(BasisElement),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(e: BasisElement) -> Self {
        Tree::Leaf(e)
    }

    pub fn node(l: Tree, r: Tree) -> Self {
        Tree::Node(Box::new(l), Box::new(r))
    }

    /// `(((e_1 e_2) e_3) ⋯ ) e_n`.
    pub fn left_normed(leaves: &[BasisElement]) -> Self {
        let mut it = leaves.iter();
        let first = Tree::Leaf(*it.next().expect("at least one leaf"));
        it.fold(first, |acc, &e| Tree::node(acc, Tree::Leaf(e)))
    }

    pub fn leaves(&self) -> Vec<BasisElement> {
        match self {
            Tree::Leaf(e) => vec![*e],
            Tree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }
}

/// Value of a tree of basis elements, `None` for zero.
pub fn evaluate_tree(spec: &AlgebraSpec, tree: &Tree, unital: bool) -> Result<Option<BasisElement>> {
    match tree {
        Tree::Leaf(e) => {
            spec.validate(e, unital)?;
            Ok(Some(*e))
        }
        Tree::Node(l, r) => {
            let lv = evaluate_tree(spec, l, unital)?;
            let rv = evaluate_tree(spec, r, unital)?;
            Ok(match (lv, rv) {
                (Some(x), Some(y)) => product_unchecked(spec, x, y),
                _ => None,
            })
        }
    }
}

/// Fractions of `b` along a trace: entry `ℓ − 1` is `#b(u_1…u_ℓ)/(ℓ + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BDensityReport {
    pub start: BasisElement,
    pub ratios: Vec<Rational64>,
    pub beta: QuadraticNumber,
}

impl BDensityReport {
    /// `|ratio_ℓ − β|`, exact.
    pub fn deviation(&self, l: usize) -> QuadraticNumber {
        QuadraticNumber::from(self.ratios[l - 1]).sub(&self.beta).abs()
    }
}

/// The `b`-density of the trace from `start` for prefix lengths `1..=t`.
pub fn b_density_report(spec: &AlgebraSpec, start: (u64, u32), t: usize) -> Result<BDensityReport> {
    if t == 0 {
        return Err(Error::invalid("trace length must be at least 1"));
    }
    let u = trace_word(spec, start.0, start.1, t)?;
    let mut bs = 0i64;
    let ratios = u
        .letters()
        .iter()
        .enumerate()
        .map(|(idx, &l)| {
            bs += l as i64;
            Rational64::new(bs, idx as i64 + 2)
        })
        .collect();
    Ok(BDensityReport {
        start: BasisElement::z(start.0, start.1),
        ratios,
        beta: spec.beta(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::LetterWord;
    use BasisElement::*;

    fn fib(m: u32) -> AlgebraSpec {
        AlgebraSpec::new(m, WordSource::fibonacci()).unwrap()
    }

    fn periodic(m: u32, p: &str) -> AlgebraSpec {
        AlgebraSpec::new(m, WordSource::periodic(p.parse().unwrap()).unwrap()).unwrap()
    }

    fn bits(s: &str) -> Vec<u8> {
        s.chars().map(|c| if c == 'a' { LETTER_A } else { LETTER_B }).collect()
    }

    #[test]
    fn segment_lengths() {
        assert_eq!(k_index(&fib(2), 1), 2);
        assert_eq!(k_index(&fib(2), 2), 3);
        assert_eq!(k_index(&periodic(5, "0"), 17), 5);
        assert!(AlgebraSpec::new(1, WordSource::fibonacci()).is_err());
    }

    #[test]
    fn multiplication_table() {
        let s = fib(2);
        assert_eq!(product(&s, Z { i: 2, j: 1 }, A, false).unwrap(), Some(Z { i: 2, j: 2 }));
        assert_eq!(product(&s, Z { i: 2, j: 3 }, B, false).unwrap(), Some(Z { i: 3, j: 1 }));
        assert_eq!(product(&s, A, A, false).unwrap(), None);
        assert_eq!(product(&s, A, B, false).unwrap(), None);
        assert_eq!(product(&s, Z { i: 2, j: 1 }, B, false).unwrap(), None);
        assert_eq!(product(&s, One, A, true).unwrap(), Some(A));
        assert!(product(&s, One, A, false).is_err());
        assert!(product(&s, Z { i: 1, j: 3 }, A, false).is_err());
    }

    #[test]
    fn traces() {
        let s = fib(2);
        assert_eq!(trace_word(&s, 1, 1, 5).unwrap(), "01001".parse::<LetterWord>().unwrap());
        assert_eq!(trace_word(&s, 2, 3, 1).unwrap(), "1".parse::<LetterWord>().unwrap());
        let p = periodic(2, "0");
        assert_eq!(trace_word(&p, 1, 1, 4).unwrap(), "0101".parse::<LetterWord>().unwrap());
    }

    #[test]
    fn left_normed_evaluation() {
        let s = fib(2);
        assert_eq!(
            evaluate_left_normed(&s, Z { i: 1, j: 1 }, &bits("abaab")).unwrap(),
            Some(Z { i: 3, j: 1 })
        );
        assert_eq!(evaluate_left_normed(&s, Z { i: 1, j: 1 }, &bits("b")).unwrap(), None);
        assert_eq!(
            evaluate_left_normed(&s, Z { i: 4, j: 2 }, &[]).unwrap(),
            Some(Z { i: 4, j: 2 })
        );
        let d = trace_decomposition(&s, 1, 1, &"01001".parse().unwrap()).unwrap();
        assert_eq!(d.segments, vec![1, 2, 0]);
        assert_eq!(d.r(), Some(1));
        assert!(d.has_expected_shape(&s));
    }

    #[test]
    fn trees() {
        let s = fib(2);
        let t = Tree::node(Tree::node(Tree::leaf(Z { i: 1, j: 1 }), Tree::leaf(A)), Tree::leaf(B));
        assert_eq!(evaluate_tree(&s, &t, false).unwrap(), Some(Z { i: 2, j: 1 }));
        let right = Tree::node(Tree::leaf(Z { i: 1, j: 1 }), Tree::node(Tree::leaf(A), Tree::leaf(B)));
        assert_eq!(evaluate_tree(&s, &right, false).unwrap(), None);
        let t = Tree::node(Tree::leaf(A), Tree::node(Tree::leaf(One), Tree::leaf(B)));
        assert_eq!(evaluate_tree(&s, &t, true).unwrap(), None);
        let t = Tree::node(Tree::node(Tree::leaf(One), Tree::leaf(A)), Tree::leaf(One));
        assert_eq!(evaluate_tree(&s, &t, true).unwrap(), Some(A));
        assert!(evaluate_tree(&s, &t, false).is_err());
    }

    #[test]
    fn b_density() {
        let p = periodic(2, "0");
        let r = b_density_report(&p, (1, 1), 10_000).unwrap();
        assert_eq!(r.beta, QuadraticNumber::from_ratio(1, 2));
        assert!(r.deviation(10_000) < QuadraticNumber::from_ratio(1, 1000));

        let s = fib(2);
        let r = b_density_report(&s, (1, 1), 1000).unwrap();
        assert!((r.beta.to_f64() - 0.419_821_8).abs() < 1e-6);
        assert!(r.deviation(1000) < QuadraticNumber::from_ratio(1, 100));

        let r = b_density_report(&s, (1, 2), 1).unwrap();
        assert_eq!(r.ratios[0], Rational64::new(1, 2));
    }
}
