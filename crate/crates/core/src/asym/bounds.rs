//! Finite-`n` checks of the codimension inequalities on computed data.
//!
//! Every report lists one entry per checked `(n, k)` and the smallest `n₀`
//! from which the inequality holds throughout the computed range.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{biguint_to_real, binomial_big, phi2, phi_power, Real};
use crate::algebra::{AlgebraSpec, GradingSpec};
use crate::codim::{self, Budget, GradedCodimResult, RelfreeResult};
use crate::error::{Error, Result};
use crate::words::{self, QuadraticNumber};

/// Which codimensions to compute for [`bounds_report`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableConfig {
    /// `c_n(A)` and `c_n^gr(A)` for `1 ≤ n ≤ n_max`.
    pub n_max: usize,
    /// `c_n(A#)` and `c_n^gr(A#)` for `1 ≤ n ≤ n_max_unital`.
    pub n_max_unital: usize,
    /// `dim R^{k,n−k}_{d0,d1}(A)` for `1 ≤ n ≤ relfree_n_max`.
    pub relfree_n_max: usize,
    /// `dim R^{k,n−k}_{d0,d1}(A#)` for `1 ≤ n ≤ relfree_unital_n_max`.
    pub relfree_unital_n_max: usize,
    pub d0: usize,
    pub d1: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            n_max: 10,
            n_max_unital: 6,
            relfree_n_max: 7,
            relfree_unital_n_max: 5,
            d0: 3,
            d1: 2,
        }
    }
}

/// Computed codimensions of `A` and `A#`, indexed from `n = 1`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CodimTable {
    #[serde(serialize_with = "strings")]
    pub ordinary: Vec<u128>,
    #[serde(serialize_with = "strings")]
    pub ordinary_unital: Vec<u128>,
    pub graded: Vec<GradedCodimResult>,
    pub graded_unital: Vec<GradedCodimResult>,
    pub relfree: Vec<RelfreeResult>,
    pub relfree_unital: Vec<RelfreeResult>,
}

fn strings<S: serde::Serializer>(v: &[u128], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CodimTable {
    pub fn compute(spec: &AlgebraSpec, grading: GradingSpec, config: &TableConfig, budget: &Budget) -> Result<Self> {
        let mut t = CodimTable::default();
        for n in 1..=config.n_max {
            t.ordinary.push(codim::codim(spec, n, false, budget)?.value);
            t.graded.push(codim::graded_codim(spec, grading, n, false, budget)?);
        }
        for n in 1..=config.n_max_unital {
            t.ordinary_unital.push(codim::codim(spec, n, true, budget)?.value);
            t.graded_unital
                .push(codim::graded_codim(spec, grading, n, true, budget)?);
        }
        for (unital, n_max) in [(false, config.relfree_n_max), (true, config.relfree_unital_n_max)] {
            for n in 1..=n_max {
                for k in 0..=n {
                    let r = codim::relfree_dim(spec, grading, config.d0, config.d1, k, n - k, unital, budget)?;
                    if unital {
                        t.relfree_unital.push(r);
                    } else {
                        t.relfree.push(r);
                    }
                }
            }
        }
        Ok(t)
    }
}

/// One checked instance `left ≤ right` (or `≥`, per the report).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub n: usize,
    pub k: Option<usize>,
    pub left: String,
    pub right: String,
    pub holds: bool,
}

/// The outcome of one inequality over a range of `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub statement: String,
    pub n_min: usize,
    pub n_max: usize,
    pub entries: Vec<BoundEntry>,
    /// Smallest `n₀` such that every entry with `n ≥ n₀` holds; `None` when
    /// the largest `n` fails.
    pub pass_threshold: Option<usize>,
    pub violations: Vec<BoundEntry>,
    pub note: Option<String>,
}

impl BoundReport {
    fn new(name: &str, statement: &str, entries: Vec<BoundEntry>, note: Option<String>) -> Self {
        let n_min = entries.iter().map(|e| e.n).min().unwrap_or(0);
        let n_max = entries.iter().map(|e| e.n).max().unwrap_or(0);
        let last_failure = entries.iter().filter(|e| !e.holds).map(|e| e.n).max();
        let pass_threshold = match last_failure {
            None => Some(n_min),
            Some(n) if n == n_max => None,
            Some(n) => Some(n + 1),
        };
        let violations = entries.iter().filter(|e| !e.holds).cloned().collect();
        BoundReport {
            name: name.into(),
            statement: statement.into(),
            n_min,
            n_max,
            entries,
            pass_threshold,
            violations,
            note,
        }
    }

    /// Whether the inequality holds for every computed `n ≥ from`.
    pub fn holds_from(&self, from: usize) -> bool {
        self.violations.iter().all(|e| e.n < from)
    }
}

fn real_str(x: &Real) -> String {
    format!("{:.15e}", x.to_f64())
}

fn int_entry(n: usize, k: Option<usize>, left: impl Into<BigUint>, right: impl Into<BigUint>) -> BoundEntry {
    let (l, r) = (left.into(), right.into());
    BoundEntry {
        n,
        k,
        holds: l <= r,
        left: l.to_string(),
        right: r.to_string(),
    }
}

/// A fitted `dim ≤ θ·k·(n−k)^T`, `θ = theta_num/theta_den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerFit {
    pub t: u32,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub theta_num: BigUint,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub theta_den: BigUint,
}

fn pow(base: usize, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), e as usize)
}

/// The smallest `T ∈ 0..=max_t`, and for it the least `θ`, with
/// `dim ≤ θ·k·(n−k)^T` (`0^0 = 1`) at every data point with `k ≥ 1`.
/// Points with `k = 0` are excluded: the right side vanishes there.
pub fn fit_power_bound(points: &[(usize, usize, u128)], max_t: u32) -> Option<PowerFit> {
    'ts: for t in 0..=max_t {
        let mut best: Option<(BigUint, BigUint)> = None;
        for &(n, k, dim) in points {
            if k == 0 {
                continue;
            }
            let den = BigUint::from(k) * pow(n - k, t);
            if den.is_zero() {
                if dim > 0 {
                    continue 'ts;
                }
                continue;
            }
            let num = BigUint::from(dim);
            let larger = match &best {
                None => true,
                Some((bn, bd)) => &num * bd > bn * &den,
            };
            if larger {
                best = Some((num, den));
            }
        }
        let (num, den) = best.unwrap_or((BigUint::zero(), BigUint::one()));
        let g = num.gcd(&den);
        let g = if g.is_zero() { BigUint::one() } else { g };
        let den = if num.is_zero() { BigUint::one() } else { &den / &g };
        return Some(PowerFit {
            t,
            theta_num: &num / &g,
            theta_den: den,
        });
    }
    None
}

/// One [`BoundReport`] per inequality that the data in `table` covers.
pub fn bounds_report(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    table: &CodimTable,
    epsilon: f64,
    scan_budget: usize,
) -> Result<Vec<BoundReport>> {
    if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::invalid("ε must lie in (0, 1/2)"));
    }
    let mut missing = Vec::new();
    if table.ordinary.is_empty() {
        missing.push("ordinary codimensions c_n(A)".to_string());
    }
    if table.graded.is_empty() {
        missing.push("graded codimensions c_n^gr(A)".to_string());
    }
    for (name, g) in [("A", &table.graded), ("A#", &table.graded_unital)] {
        if let Some((i, r)) = g.iter().enumerate().find(|(i, r)| r.n != i + 1) {
            missing.push(format!(
                "graded codimension of {name} at n = {} (found n = {})",
                i + 1,
                r.n
            ));
        }
    }
    if !missing.is_empty() {
        return Err(Error::InsufficientData(missing.join("; ")));
    }
    if table
        .graded
        .iter()
        .chain(&table.graded_unital)
        .any(|g| g.grading != grading)
    {
        return Err(Error::invalid("the table was computed under another grading"));
    }

    let mut reports = Vec::new();
    let beta_q = spec.beta();
    let beta = Real::from_quadratic(&beta_q);
    let eps = Real::from_f64(epsilon);

    // c_n ≤ c_n^gr
    for (name, ord, gr) in [
        ("graded-dominates", &table.ordinary, &table.graded),
        ("graded-dominates-unital", &table.ordinary_unital, &table.graded_unital),
    ] {
        let entries: Vec<_> = ord
            .iter()
            .zip(gr.iter())
            .map(|(&c, g)| int_entry(g.n, None, c, g.value))
            .collect();
        if !entries.is_empty() {
            reports.push(BoundReport::new(name, "c_n ≤ c_n^gr", entries, None));
        }
    }

    // adjoining a unit does not decrease codimensions
    let unital_ord: Vec<_> = table
        .ordinary
        .iter()
        .zip(&table.ordinary_unital)
        .enumerate()
        .map(|(i, (&a, &u))| int_entry(i + 1, None, a, u))
        .collect();
    if !unital_ord.is_empty() {
        reports.push(BoundReport::new(
            "unital-ordinary",
            "c_n(A) ≤ c_n(A#)",
            unital_ord,
            None,
        ));
    }
    let unital_gr: Vec<_> = table
        .graded
        .iter()
        .zip(&table.graded_unital)
        .map(|(a, u)| int_entry(a.n, None, a.value, u.value))
        .collect();
    if !unital_gr.is_empty() {
        reports.push(BoundReport::new(
            "unital-graded",
            "c_n^gr(A) ≤ c_n^gr(A#)",
            unital_gr,
            None,
        ));
    }

    // c_{k,n−k} ≤ 2n²
    let quadratic = table
        .graded
        .iter()
        .flat_map(|g| {
            g.partials
                .iter()
                .map(move |p| int_entry(g.n, p.k, p.value, 2 * (g.n as u128).pow(2)))
        })
        .collect();
    reports.push(BoundReport::new(
        "partial-quadratic",
        "c_{k,n−k}(A) ≤ 2n²",
        quadratic,
        None,
    ));

    // the contributing k concentrate near (n − k)/n = β
    let mut window = Vec::new();
    for g in &table.graded {
        let n = g.n;
        let dev = nonzero_ks(g)
            .map(|k| {
                QuadraticNumber::from_ratio((n - k) as i128, n as i128)
                    .sub(&beta_q)
                    .abs()
            })
            .max();
        if let Some(dev) = dev {
            let d = Real::from_quadratic(&dev);
            window.push(BoundEntry {
                n,
                k: None,
                left: real_str(&d),
                right: real_str(&eps),
                holds: d.le(&eps),
            });
        }
    }
    reports.push(BoundReport::new(
        "window",
        "max over c_{k,n−k} ≠ 0 of |(n−k)/n − β| ≤ ε",
        window,
        None,
    ));

    // c_n^gr ≤ 2n³ Φ(β+ε)^n
    let phi_up = phi2(&beta.add(&eps).min_one())?;
    let upper = table
        .graded
        .iter()
        .map(|g| {
            let n3 = Real::from_u128(2 * (g.n as u128).pow(3));
            let right = n3.mul(&phi_up.powi(g.n));
            let left = Real::from_u128(g.value);
            BoundEntry {
                n: g.n,
                k: None,
                left: g.value.to_string(),
                right: real_str(&right),
                holds: left.le(&right),
            }
        })
        .collect();
    let half = Real::from_ratio(1, 2);
    let note =
        (!eps.le(&half.sub(&beta))).then(|| "ε exceeds 1/2 − β, outside the range the bound is stated for".to_string());
    reports.push(BoundReport::new(
        "graded-upper",
        "c_n^gr(A) ≤ 2n³ Φ(β+ε)^n",
        upper,
        note,
    ));

    // c_n^gr ≥ C(n,k*) ≥ (1/n²) Φ((n−k*)/n)^n ≥ (1/n²) Φ(β−ε)^n
    let phi_down = phi2(&beta.sub(&eps).max(&Real::zero()))?;
    let (mut chain_binom, mut chain_stirling, mut chain_eps) = (Vec::new(), Vec::new(), Vec::new());
    for g in &table.graded {
        let n = g.n;
        let Some(k) = nonzero_ks(g).max_by(|&a, &b| binomial_big(n, a).cmp(&binomial_big(n, b)).then(b.cmp(&a))) else {
            continue;
        };
        let binom = binomial_big(n, k);
        chain_binom.push(int_entry(n, Some(k), binom.clone(), g.value).flip());
        let nn = Real::from_u128((n * n) as u128);
        let stirling = phi_power(n, k)?.div(&nn);
        chain_stirling.push(BoundEntry {
            n,
            k: Some(k),
            left: binom.to_string(),
            right: real_str(&stirling),
            holds: stirling.le(&biguint_to_real(&binom)),
        });
        let floor = phi_down.powi(n).div(&nn);
        chain_eps.push(BoundEntry {
            n,
            k: Some(k),
            left: real_str(&stirling),
            right: real_str(&floor),
            holds: floor.le(&stirling),
        });
    }
    reports.push(BoundReport::new(
        "graded-lower-binomial",
        "c_n^gr(A) ≥ C(n,k*) for the nonzero k* of largest binomial",
        chain_binom,
        None,
    ));
    reports.push(BoundReport::new(
        "binomial-entropy",
        "C(n,k*) ≥ (1/n²) Φ((n−k*)/n)^n",
        chain_stirling,
        None,
    ));
    reports.push(BoundReport::new(
        "entropy-epsilon",
        "(1/n²) Φ((n−k*)/n)^n ≥ (1/n²) Φ(β−ε)^n",
        chain_eps,
        None,
    ));

    // dim R^{k,n−k}_{d0,d1}(A) ≤ d0 m² k Comp_w(n−k), k ≥ 1
    if !table.relfree.is_empty() {
        let m2 = (spec.m() as u128).pow(2);
        let mut entries = Vec::new();
        for r in table.relfree.iter().filter(|r| r.k >= 1) {
            let comp = if r.nk == 0 {
                1
            } else {
                words::complexity(spec.word(), r.nk, scan_budget)? as u128
            };
            entries.push(int_entry(
                r.k + r.nk,
                Some(r.k),
                r.value,
                r.d0 as u128 * m2 * r.k as u128 * comp,
            ));
        }
        reports.push(BoundReport::new(
            "relfree-linear",
            "dim R^{k,n−k}_{d0,d1}(A) ≤ d0 m² k Comp_w(n−k) for k ≥ 1",
            entries,
            (grading != GradingSpec::main()).then(|| "the bound is stated for the grading 001".to_string()),
        ));
    }

    // fit dim R(A) ≤ θ k (n−k)^T, then test dim R(A#) ≤ θ (k+1)^{d0+2} (n−k+1)^{T+d1}
    if let Some(first) = table.relfree_unital.first() {
        let (d0, d1) = (first.d0, first.d1);
        let n_top = table.relfree_unital.iter().map(|r| r.k + r.nk).max().unwrap_or(0);
        let points: Vec<_> = table
            .relfree
            .iter()
            .filter(|r| r.d0 == d0 && r.d1 == d1 && r.k + r.nk <= n_top)
            .map(|r| (r.k + r.nk, r.k, r.value))
            .collect();
        if let Some(fit) = fit_power_bound(&points, 3) {
            let entries = table
                .relfree_unital
                .iter()
                .filter(|r| r.d0 == d0 && r.d1 == d1)
                .map(|r| {
                    let n = r.k + r.nk;
                    let bound = &fit.theta_num * pow(r.k + 1, (d0 + 2) as u32) * pow(r.nk + 1, fit.t + d1 as u32);
                    let left = BigUint::from(r.value) * &fit.theta_den;
                    BoundEntry {
                        n,
                        k: Some(r.k),
                        holds: left <= bound,
                        left: r.value.to_string(),
                        right: format!("{}/{}", bound, fit.theta_den),
                    }
                })
                .collect();
            let note = format!(
                "fitted T = {}, θ = {}/{} on dim R(A) with 1 ≤ k ≤ n ≤ {}",
                fit.t, fit.theta_num, fit.theta_den, n_top
            );
            reports.push(BoundReport::new(
                "relfree-power",
                "dim R^{k,n−k}_{d0,d1}(A#) ≤ θ (k+1)^{d0+2} (n−k+1)^{T+d1}",
                entries,
                Some(note),
            ));
        }
    }
    Ok(reports)
}

fn nonzero_ks(g: &GradedCodimResult) -> impl Iterator<Item = usize> + '_ {
    g.partials.iter().filter(|p| p.value > 0).filter_map(|p| p.k)
}

impl BoundEntry {
    /// Swaps the sides, for entries built as `right ≤ left`.
    fn flip(self) -> Self {
        BoundEntry {
            left: self.right,
            right: self.left,
            ..self
        }
    }
}

impl Real {
    fn min_one(&self) -> Real {
        if Real::one().lt(self) {
            Real::one()
        } else {
            self.clone()
        }
    }
}
