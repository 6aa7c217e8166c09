//! Exact codimensions of `A(m, w)` and `A#` as ranks of evaluation matrices.
//!
//! * [`codim`] — `c_n`, ordinary codimensions;
//! * [`partial_graded_codim`] — `c_{k,n−k}` with `k` even and `n − k` odd variables;
//! * [`graded_codim`] — `c_n^gr = Σ_k C(n,k)·c_{k,n−k}`;
//! * [`relfree_dim`] — dimensions of the multihomogeneous components of the
//!   relatively free graded algebra;
//! * [`nonzero_window`] — the `k` with `c_{k,n−k} ≠ 0`.
//!
//! Non-unital multilinear codimensions use left-normed columns (every other
//! bracketing vanishes by 2-step left nilpotency) and are split into blocks
//! by the variable carrying the `z`; blocks whose first variables have the
//! same parity are isomorphic, so one block per parity is ranked. Everything
//! else goes through the generic engine over all bracketings.

mod engine;
mod fast;
mod monomial;
mod rank;
mod traces;

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{AlgebraSpec, BasisElement, GradingSpec};
use crate::error::{Error, Result};
use crate::words::{LetterWord, QuadraticNumber, MIN_SCAN_WINDOW};

pub use engine::{RowKey, RowTarget};
pub use monomial::{
    arrangements, binomial, catalan, factorial, left_normed_shape, multinomial, next_permutation, shapes, ColumnMode,
    MonomialSpace, Shape, Variable,
};
pub use rank::{rank_exact, rank_exact_with_deadline, rank_fraction_free, rank_mod_p, Deadline, SparseMatrix};
pub use traces::{letter_counts, trace_from_key, TraceCatalog};

/// Resource limits for a computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Budget {
    /// Largest number of monomial columns of a single evaluation matrix.
    pub max_columns: u128,
    /// Largest number of word positions scanned for factors or starts.
    pub scan_budget: usize,
    /// Wall-clock limit per operation, unlimited when `None`.
    pub time_budget_seconds: Option<f64>,
    /// First window of the doubling factor scan.
    pub min_scan_window: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_columns: 5_000_000,
            scan_budget: 100_000,
            time_budget_seconds: None,
            min_scan_window: MIN_SCAN_WINDOW,
        }
    }
}

impl Budget {
    pub fn deadline(&self) -> Deadline {
        Deadline {
            at: self
                .time_budget_seconds
                .map(|s| Instant::now() + std::time::Duration::from_secs_f64(s)),
            seconds: self.time_budget_seconds.unwrap_or(0.0),
        }
    }

    fn check_columns(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_columns {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                needed,
                limit: self.max_columns,
            });
        }
        Ok(())
    }
}

/// How the evaluation matrix is assembled and ranked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Block decomposition when it applies, the generic engine otherwise.
    Auto,
    /// Like `Auto`, but rank the block of every variable separately.
    AllBlocks,
    /// Always the generic engine.
    Generic,
}

/// A computed codimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodimResult {
    pub n: usize,
    /// Number of even variables for partial codimensions.
    pub k: Option<usize>,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub value: u128,
    pub graded: bool,
    pub unital: bool,
    pub grading: GradingSpec,
    pub mode: ColumnMode,
    /// Distinct rows of the evaluation matrix (summed over ranked blocks).
    pub rows: usize,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub columns: u128,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

pub(crate) fn as_string<S: serde::Serializer, T: ToString>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Full control over a partial codimension `c_{k,nk}`: column mode and
/// assembly strategy. The other entry points call this.
#[allow(clippy::too_many_arguments)]
pub fn codim_with(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    k: usize,
    nk: usize,
    unital: bool,
    mode: ColumnMode,
    strategy: Strategy,
    budget: &Budget,
) -> Result<CodimResult> {
    let start = Instant::now();
    let n = k + nk;
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    if unital && mode == ColumnMode::LeftNormed {
        return Err(Error::invalid(
            "the unital extension needs all bracketings (FullTrees columns)",
        ));
    }
    let space = MonomialSpace::multilinear(mode, k, nk);
    let columns = space.column_count();
    budget.check_columns("multilinear monomial columns", columns)?;
    let deadline = budget.deadline();
    let catalog = TraceCatalog::build(spec, grading, n, budget.scan_budget, budget.min_scan_window)?;

    let (value, rows) = if mode == ColumnMode::LeftNormed && !unital && n >= 2 && strategy != Strategy::Generic {
        let parities: Vec<u8> = space.variables.iter().map(|v| v.parity).collect();
        let mut value = 0u128;
        let mut rows = 0usize;
        let mut cache: [Option<usize>; 2] = [None, None];
        for v in 0..n {
            let p = parities[v] as usize;
            if strategy == Strategy::Auto {
                if let Some(r) = cache[p] {
                    value += r as u128;
                    continue;
                }
            }
            let others: Vec<u8> = parities
                .iter()
                .enumerate()
                .filter(|&(u, _)| u != v)
                .map(|(_, &q)| q)
                .collect();
            let m = fast::block(&catalog, grading, p as u8, &others);
            let r = rank_exact_with_deadline(&m, deadline)?;
            rows += m.ncols();
            cache[p] = Some(r);
            value += r as u128;
        }
        (value, rows)
    } else {
        let out = engine::build(&space, unital, grading, &catalog, deadline)?;
        let r = rank_exact_with_deadline(&out.columns, deadline)?;
        (r as u128, out.rows.len())
    };
    Ok(CodimResult {
        n,
        k: Some(k),
        value,
        graded: !grading.is_trivial(),
        unital,
        grading,
        mode,
        rows,
        columns,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn default_mode(unital: bool) -> ColumnMode {
    if unital {
        ColumnMode::FullTrees
    } else {
        ColumnMode::LeftNormed
    }
}

/// `c_n(A)` or, when `unital`, `c_n(A#)`.
pub fn codim(spec: &AlgebraSpec, n: usize, unital: bool, budget: &Budget) -> Result<CodimResult> {
    let mut r = codim_with(
        spec,
        GradingSpec::trivial(),
        n,
        0,
        unital,
        default_mode(unital),
        Strategy::Auto,
        budget,
    )?;
    r.k = None;
    r.graded = false;
    Ok(r)
}

/// `c_{k,nk}` under the grading: `k` even and `nk` odd variables.
pub fn partial_graded_codim(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    k: usize,
    nk: usize,
    unital: bool,
    budget: &Budget,
) -> Result<CodimResult> {
    let mut r = codim_with(
        spec,
        grading,
        k,
        nk,
        unital,
        default_mode(unital),
        Strategy::Auto,
        budget,
    )?;
    r.graded = true;
    Ok(r)
}

/// `c_n^gr` with its partial codimensions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedCodimResult {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub value: u128,
    pub unital: bool,
    pub grading: GradingSpec,
    pub partials: Vec<CodimResult>,
}

/// `c_n^gr = Σ_k C(n,k)·c_{k,n−k}`.
pub fn graded_codim(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    n: usize,
    unital: bool,
    budget: &Budget,
) -> Result<GradedCodimResult> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let mut value = 0u128;
    let mut partials = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let r = partial_graded_codim(spec, grading, k, n - k, unital, budget)?;
        value += binomial(n, k) * r.value;
        partials.push(r);
    }
    Ok(GradedCodimResult {
        n,
        value,
        unital,
        grading,
        partials,
    })
}

/// Whether `c_{k,nk}` of the non-unital algebra is nonzero, decided by the
/// existence of a nonzero evaluation.
pub fn partial_is_nonzero(catalog: &TraceCatalog, grading: GradingSpec, k: usize, nk: usize) -> bool {
    let n = k + nk;
    if n == 1 {
        let p = u8::from(nk == 1);
        return grading.da == p || grading.db == p || catalog.has_start(p);
    }
    for (zp, present) in [(0u8, k > 0), (1u8, nk > 0)] {
        if !present {
            continue;
        }
        let even = k - usize::from(zp == 0);
        let odd = nk - usize::from(zp == 1);
        for u in catalog.traces(zp, n - 1) {
            let (na, nb) = letter_counts(u.letters());
            let fits = if grading.da == grading.db {
                if grading.da == 0 {
                    odd == 0
                } else {
                    even == 0
                }
            } else {
                let (with_a, with_b) = if grading.da == 0 { (even, odd) } else { (odd, even) };
                with_a == na && with_b == nb
            };
            if fits {
                return true;
            }
        }
    }
    false
}

/// The contributing `k` at degree `n` and their distance from `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowReport {
    pub n: usize,
    pub ks: Vec<usize>,
    /// `|(n − k)/n − β|` for each contributing `k`.
    pub deviations: Vec<QuadraticNumber>,
    pub max_deviation: Option<QuadraticNumber>,
    pub beta: QuadraticNumber,
}

/// The `k` with `c_{k,n−k}(A) ≠ 0` and `max |(n − k)/n − β|` over them.
pub fn nonzero_window(spec: &AlgebraSpec, grading: GradingSpec, n: usize, budget: &Budget) -> Result<WindowReport> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let catalog = TraceCatalog::build(spec, grading, n, budget.scan_budget, budget.min_scan_window)?;
    let beta = spec.beta();
    let ks: Vec<usize> = (0..=n)
        .filter(|&k| partial_is_nonzero(&catalog, grading, k, n - k))
        .collect();
    let deviations: Vec<QuadraticNumber> = ks
        .iter()
        .map(|&k| QuadraticNumber::from_ratio((n - k) as i128, n as i128).sub(&beta).abs())
        .collect();
    Ok(WindowReport {
        n,
        max_deviation: deviations.iter().copied().max(),
        ks,
        deviations,
        beta,
    })
}

/// Integer partitions of `total` into at most `parts` positive parts,
/// weakly decreasing, in lexicographically decreasing order.
fn partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, parts, &mut Vec::new(), &mut out);
    out
}

/// Number of ways to give `vars` variables the nonzero degrees `parts`
/// (the rest degree 0).
fn placements(parts: &[usize], vars: usize) -> u128 {
    let mut counts: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let j = (i..parts.len()).find(|&j| parts[j] != parts[i]).unwrap_or(parts.len());
        counts.push(j - i);
        i = j;
    }
    counts.push(vars - parts.len());
    multinomial(&counts)
}

/// A relatively-free dimension with its multihomogeneous breakdown.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelfreeResult {
    pub d0: usize,
    pub d1: usize,
    pub k: usize,
    pub nk: usize,
    pub unital: bool,
    #[serde(serialize_with = "as_string")]
    pub value: u128,
    pub components: Vec<RelfreeComponent>,
}

/// One orbit of multidegrees under permuting variables of equal parity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelfreeComponent {
    pub even_degrees: Vec<usize>,
    pub odd_degrees: Vec<usize>,
    #[serde(serialize_with = "as_string")]
    pub multiplicity: u128,
    #[serde(serialize_with = "as_string")]
    pub dim: u128,
}

/// `dim R^{k,nk}_{d0,d1}` of `A` (or `A#`): polynomials in `d0` even and `d1`
/// odd variables of total degree `k` in the even and `nk` in the odd ones,
/// modulo the graded identities.
#[allow(clippy::too_many_arguments)]
pub fn relfree_dim(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    d0: usize,
    d1: usize,
    k: usize,
    nk: usize,
    unital: bool,
    budget: &Budget,
) -> Result<RelfreeResult> {
    let n = k + nk;
    if n == 0 {
        return Err(Error::invalid("total degree k + nk must be at least 1"));
    }
    let deadline = budget.deadline();
    let catalog = TraceCatalog::build(spec, grading, n, budget.scan_budget, budget.min_scan_window)?;
    let mut value = 0u128;
    let mut components = Vec::new();
    for even in partitions(k, d0) {
        for odd in partitions(nk, d1) {
            let variables: Vec<Variable> = even
                .iter()
                .map(|&d| Variable { parity: 0, degree: d })
                .chain(odd.iter().map(|&d| Variable { parity: 1, degree: d }))
                .collect();
            let space = MonomialSpace {
                mode: default_mode(unital),
                variables,
            };
            budget.check_columns("monomial columns of a multihomogeneous component", space.column_count())?;
            let out = engine::build(&space, unital, grading, &catalog, deadline)?;
            let dim = rank_exact_with_deadline(&out.columns, deadline)? as u128;
            let multiplicity = placements(&even, d0) * placements(&odd, d1);
            value += dim * multiplicity;
            components.push(RelfreeComponent {
                even_degrees: even.clone(),
                odd_degrees: odd.clone(),
                multiplicity,
                dim,
            });
        }
    }
    Ok(RelfreeResult {
        d0,
        d1,
        k,
        nk,
        unital,
        value,
        components,
    })
}

/// Value given to one variable by a substitution row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AssignedValue {
    One,
    A,
    B,
    /// A `z`-start; `start` is a representative `(i, j)`.
    Z {
        start: (u64, u32),
    },
}

/// One evaluation functional of a multilinear evaluation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionRow {
    pub assignment: Vec<AssignedValue>,
    pub target: BasisElement,
    /// Column indices (word index · #shapes + shape index) with entry 1.
    pub support: Vec<u32>,
}

/// Substitution rows of the multilinear evaluation matrix of degree `n`
/// with `k` even variables (all even when `k` is `None`, i.e. ungraded).
pub fn assemble_rows(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    n: usize,
    k: Option<usize>,
    unital: bool,
    budget: &Budget,
) -> Result<Vec<SubstitutionRow>> {
    let k = k.unwrap_or(n);
    if k > n || n == 0 {
        return Err(Error::invalid("need 1 <= n and k <= n"));
    }
    let space = MonomialSpace::multilinear(default_mode(unital), k, n - k);
    budget.check_columns("multilinear monomial columns", space.column_count())?;
    let catalog = TraceCatalog::build(spec, grading, n, budget.scan_budget, budget.min_scan_window)?;
    let out = engine::build(&space, unital, grading, &catalog, budget.deadline())?;
    let mut supports: Vec<Vec<u32>> = vec![Vec::new(); out.rows.len()];
    for (c, col) in out.columns.rows().iter().enumerate() {
        for &(r, v) in col {
            debug_assert_eq!(v, 1, "multilinear entries are 0/1");
            supports[r as usize].push(c as u32);
        }
    }
    let limit = budget.scan_budget as u64;
    let mut rows = Vec::with_capacity(out.rows.len());
    for (key, support) in out.rows.iter().zip(supports) {
        let mut assignment = vec![AssignedValue::One; n];
        for (v, c) in key.counts.iter().enumerate() {
            if c[1] == 1 {
                assignment[v] = AssignedValue::A;
            } else if c[2] == 1 {
                assignment[v] = AssignedValue::B;
            }
        }
        let target = match &key.target {
            RowTarget::One => BasisElement::One,
            RowTarget::Letter(l) => BasisElement::letter(*l),
            RowTarget::Trace(u) => {
                let zv = key.z_var.expect("trace rows carry a z") as usize;
                let parity = space.variables[zv].parity;
                let (i, j) = catalog
                    .representative(spec, parity, u, limit)
                    .ok_or_else(|| Error::ScanBudget {
                        length: u.len(),
                        budget: budget.scan_budget,
                    })?;
                assignment[zv] = AssignedValue::Z { start: (i, j) };
                crate::algebra::evaluate_left_normed(spec, BasisElement::z(i, j), u.letters())?
                    .expect("traces give nonzero products")
            }
        };
        rows.push(SubstitutionRow {
            assignment,
            target,
            support,
        });
    }
    Ok(rows)
}

/// The trace words `u` of length `len` from starts of the given parity.
pub fn traces(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    parity: u8,
    len: usize,
    budget: &Budget,
) -> Result<Vec<LetterWord>> {
    let catalog = TraceCatalog::build(spec, grading, len + 1, budget.scan_budget, budget.min_scan_window)?;
    Ok(catalog.traces(parity, len).to_vec())
}
