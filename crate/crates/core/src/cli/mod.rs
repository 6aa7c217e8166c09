//! The `codim-lab` command line: argument parsing, resolved run
//! configurations, and JSON/CSV report envelopes.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exceeded.

mod word_spec;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, GradingSpec};
use crate::asym::{self, CodimTable, Real, TableConfig};
use crate::codim::{self, Budget};
use crate::error::{Error, Result};
use crate::words::{self, WordSource};

pub use word_spec::parse_word_spec;

pub const TOOL: &str = "codim-lab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "codim-lab",
    version,
    about = "Exact codimensions of word-indexed nonassociative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every command.
#[derive(Args, Clone, Debug)]
pub struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Largest number of word positions scanned for factors or starts
    #[arg(long, default_value_t = 100_000)]
    pub scan_budget: usize,
    /// Largest number of monomial columns of one evaluation matrix
    #[arg(long, default_value_t = 5_000_000)]
    pub max_columns: u128,
    /// Wall-clock limit per operation, in seconds
    #[arg(long, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    /// Record the elapsed time in the report (breaks byte reproducibility)
    #[arg(long)]
    pub record_timing: bool,
}

/// The algebra `A(m, w)` and a grading.
#[derive(Args, Clone, Debug)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// periodic:<bits> | mech:<p>,<q>,<d>,<r>[;rho=<a>/<b>] | mech:<a>/<b> | fib | sub:<name>
    #[arg(long, default_value = "fib")]
    pub word: String,
    /// Parities of z_1^(1), a, b
    #[arg(long, default_value = "001")]
    pub grading: String,
}

/// Which codimensions feed the bound checks.
#[derive(Args, Clone, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max_unital: usize,
    #[arg(long, default_value_t = 7)]
    pub relfree_n_max: usize,
    #[arg(long, default_value_t = 5)]
    pub relfree_unital_n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub d0: usize,
    #[arg(long, default_value_t = 2)]
    pub d1: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

/// An inclusive range of degrees, written `n` or `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub min: usize,
    pub max: usize,
}

impl std::str::FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").unwrap_or((s, s));
        let min: usize = a.parse().map_err(|_| format!("invalid degree {a:?}"))?;
        let max: usize = b.parse().map_err(|_| format!("invalid degree {b:?}"))?;
        if min == 0 || min > max {
            return Err(format!("degree range {s:?} must satisfy 1 ≤ min ≤ max"));
        }
        Ok(NRange { min, max })
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Prefix and slope of a word
    Word {
        #[arg(long, default_value = "fib")]
        word: String,
        #[arg(long, default_value_t = 64)]
        length: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Factor complexity Comp(n) for 1 ≤ n ≤ n-max
    Complexity {
        #[arg(long, default_value = "fib")]
        word: String,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Balance constant and slope deviations of factors up to length lmax
    Balance {
        #[arg(long, default_value = "fib")]
        word: String,
        #[arg(long, default_value_t = 30)]
        lmax: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ordinary codimensions c_n
    Codim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: NRange,
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Graded codimensions c_n^gr with their partial codimensions
    GradedCodim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: NRange,
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// One partial codimension c_{k,n−k}
    PartialCodim {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The k with c_{k,n−k} ≠ 0 and their distance from β
    Window {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n: NRange,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dimension of a component of the relatively free graded algebra
    Relfree {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        d0: usize,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nk: usize,
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// β, Φ(β), n-th roots of codimensions, constrained-maximum and Φ-identity grids
    Asymptotics {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "1..8")]
        n: NRange,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Finite-n checks of the codimension inequalities
    VerifyBounds {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Every report for one algebra
    ReportAll {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// A fully resolved run: every default filled in, the word in canonical form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub m: Option<u32>,
    pub word: Option<String>,
    pub grading: Option<GradingSpec>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub k: Option<usize>,
    pub nk: Option<usize>,
    pub d0: Option<usize>,
    pub d1: Option<usize>,
    pub length: Option<usize>,
    pub unital: Option<bool>,
    pub epsilon: Option<f64>,
    pub table: Option<TableConfig>,
    pub scan_budget: usize,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub max_columns: u128,
    pub time_budget_seconds: Option<f64>,
    pub format: Format,
    pub output: Option<String>,
    pub record_timing: bool,
}

impl RunConfig {
    fn base(command: &str, common: &CommonArgs) -> Result<Self> {
        if common.scan_budget == 0 || common.max_columns == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        if let Some(t) = common.time_budget {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid("the time budget must be a positive number of seconds"));
            }
        }
        Ok(RunConfig {
            command: command.into(),
            m: None,
            word: None,
            grading: None,
            n_min: None,
            n_max: None,
            k: None,
            nk: None,
            d0: None,
            d1: None,
            length: None,
            unital: None,
            epsilon: None,
            table: None,
            scan_budget: common.scan_budget,
            max_columns: common.max_columns,
            time_budget_seconds: common.time_budget,
            format: common.format,
            output: common.output.as_ref().map(|p| p.display().to_string()),
            record_timing: common.record_timing,
        })
    }

    fn with_word(mut self, word: &str) -> Result<Self> {
        self.word = Some(parse_word_spec(word)?.spec_string());
        Ok(self)
    }

    fn with_algebra(mut self, a: &AlgebraArgs, graded: bool) -> Result<Self> {
        if a.m < 2 {
            return Err(Error::invalid("m must be at least 2"));
        }
        self.m = Some(a.m);
        if graded {
            self.grading = Some(a.grading.parse()?);
        }
        self.with_word(&a.word)
    }

    fn with_range(mut self, n: NRange) -> Self {
        self.n_min = Some(n.min);
        self.n_max = Some(n.max);
        self
    }

    fn with_table(mut self, t: &TableArgs) -> Result<Self> {
        if !(t.epsilon.is_finite() && t.epsilon > 0.0 && t.epsilon < 0.5) {
            return Err(Error::invalid("ε must lie in (0, 1/2)"));
        }
        if t.n_max == 0 {
            return Err(Error::invalid("n-max must be at least 1"));
        }
        self.epsilon = Some(t.epsilon);
        self.table = Some(TableConfig {
            n_max: t.n_max,
            n_max_unital: t.n_max_unital,
            relfree_n_max: t.relfree_n_max,
            relfree_unital_n_max: t.relfree_unital_n_max,
            d0: t.d0,
            d1: t.d1,
        });
        Ok(self)
    }

    /// Validates the parsed arguments and fills in every default.
    pub fn resolve(command: &Command) -> Result<Self> {
        Ok(match command {
            Command::Word { word, length, common } => {
                let mut c = RunConfig::base("word", common)?.with_word(word)?;
                c.length = Some(*length);
                c
            }
            Command::Complexity { word, n_max, common } => {
                if *n_max == 0 {
                    return Err(Error::invalid("n-max must be at least 1"));
                }
                RunConfig::base("complexity", common)?
                    .with_word(word)?
                    .with_range(NRange { min: 1, max: *n_max })
            }
            Command::Balance { word, lmax, common } => {
                if *lmax == 0 {
                    return Err(Error::invalid("lmax must be at least 1"));
                }
                let mut c = RunConfig::base("balance", common)?.with_word(word)?;
                c.length = Some(*lmax);
                c
            }
            Command::Codim {
                algebra,
                n,
                unital,
                common,
            } => {
                let mut c = RunConfig::base("codim", common)?
                    .with_algebra(algebra, false)?
                    .with_range(*n);
                c.unital = Some(*unital);
                c
            }
            Command::GradedCodim {
                algebra,
                n,
                unital,
                common,
            } => {
                let mut c = RunConfig::base("graded-codim", common)?
                    .with_algebra(algebra, true)?
                    .with_range(*n);
                c.unital = Some(*unital);
                c
            }
            Command::PartialCodim {
                algebra,
                n,
                k,
                unital,
                common,
            } => {
                if *k > *n || *n == 0 {
                    return Err(Error::invalid("need 0 ≤ k ≤ n and n ≥ 1"));
                }
                let mut c = RunConfig::base("partial-codim", common)?
                    .with_algebra(algebra, true)?
                    .with_range(NRange { min: *n, max: *n });
                c.k = Some(*k);
                c.nk = Some(n - k);
                c.unital = Some(*unital);
                c
            }
            Command::Window { algebra, n, common } => RunConfig::base("window", common)?
                .with_algebra(algebra, true)?
                .with_range(*n),
            Command::Relfree {
                algebra,
                d0,
                d1,
                k,
                nk,
                unital,
                common,
            } => {
                if k + nk == 0 {
                    return Err(Error::invalid("total degree k + nk must be at least 1"));
                }
                let mut c = RunConfig::base("relfree", common)?.with_algebra(algebra, true)?;
                c.d0 = Some(*d0);
                c.d1 = Some(*d1);
                c.k = Some(*k);
                c.nk = Some(*nk);
                c.unital = Some(*unital);
                c
            }
            Command::Asymptotics { algebra, n, common } => RunConfig::base("asymptotics", common)?
                .with_algebra(algebra, true)?
                .with_range(*n),
            Command::VerifyBounds { algebra, table, common } => RunConfig::base("verify-bounds", common)?
                .with_algebra(algebra, true)?
                .with_table(table)?,
            Command::ReportAll { algebra, table, common } => RunConfig::base("report-all", common)?
                .with_algebra(algebra, true)?
                .with_table(table)?,
        })
    }

    fn budget(&self) -> Budget {
        Budget {
            max_columns: self.max_columns,
            scan_budget: self.scan_budget,
            time_budget_seconds: self.time_budget_seconds,
            ..Budget::default()
        }
    }

    fn word_source(&self) -> Result<WordSource> {
        parse_word_spec(self.word.as_deref().ok_or_else(|| Error::invalid("no word given"))?)
    }

    fn spec(&self) -> Result<AlgebraSpec> {
        AlgebraSpec::new(self.m.ok_or_else(|| Error::invalid("no m given"))?, self.word_source()?)
    }

    fn grading(&self) -> GradingSpec {
        self.grading.unwrap_or_else(GradingSpec::main)
    }

    fn range(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min.unwrap_or(1)..=self.n_max.unwrap_or(1)
    }
}

/// One CSV line: `command, quantity, n, k, value`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub command: String,
    pub quantity: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub value: String,
}

/// The report of one run.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub results: Vec<Value>,
    /// Wall-clock time, present only with `--record-timing`.
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub rows: Vec<CsvRow>,
}

impl ReportEnvelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::invalid(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Accumulates results and CSV rows of one command.
struct Out {
    command: String,
    results: Vec<Value>,
    rows: Vec<CsvRow>,
}

impl Out {
    fn new(command: &str) -> Self {
        Out {
            command: command.into(),
            results: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn row(&mut self, quantity: &str, n: Option<usize>, k: Option<usize>, value: impl ToString) {
        self.rows.push(CsvRow {
            command: self.command.clone(),
            quantity: quantity.into(),
            n,
            k,
            value: value.to_string(),
        });
    }

    fn push(&mut self, v: impl Serialize) {
        self.results.push(serde_json::to_value(v).expect("results serialize"));
    }

    /// Nests another command's output as a section.
    fn section(&mut self, name: &str, inner: Out) {
        self.results.push(json!({ "section": name, "results": inner.results }));
        for mut r in inner.rows {
            r.command = format!("{}/{}", self.command, r.command);
            self.rows.push(r);
        }
    }
}

fn word_report(ws: &WordSource, length: usize) -> Out {
    let mut out = Out::new("word");
    let slope = ws.slope();
    let prefix = ws.prefix(length);
    out.push(json!({
        "word": ws.spec_string(),
        "slope": slope.to_string(),
        "slope_f64": slope.to_f64(),
        "irrational": slope.is_irrational(),
        "length": length,
        "prefix": prefix.to_string(),
    }));
    out.row("prefix", Some(length), None, &prefix);
    out.row("slope", None, None, slope);
    out
}

fn complexity_report(ws: &WordSource, n_max: usize, budget: &Budget) -> Result<Out> {
    let mut out = Out::new("complexity");
    for n in 1..=n_max {
        let f = words::factors_with_window(ws, n, budget.scan_budget, budget.min_scan_window)?;
        out.push(json!({
            "n": n,
            "complexity": f.complexity().to_string(),
            "scan_window": f.scan_window.to_string(),
        }));
        out.row("complexity", Some(n), None, f.complexity());
    }
    Ok(out)
}

fn balance_report(ws: &WordSource, lmax: usize, budget: &Budget) -> Result<Out> {
    let mut out = Out::new("balance");
    let c = words::balance_constant(ws, lmax, budget.scan_budget)?;
    let dev = words::slope_deviation_report(ws, lmax, c, budget.scan_budget)?;
    let max = dev.max_deviation();
    let violations: Vec<String> = dev.violations().map(|v| v.factor.to_string()).collect();
    out.push(json!({
        "lmax": lmax,
        "balance_constant": c.to_string(),
        "slope": dev.alpha.to_string(),
        "factors_checked": dev.entries.len().to_string(),
        "max_scaled_deviation": max.map(|m| m.to_string()),
        "max_scaled_deviation_f64": max.map(|m| m.to_f64()),
        "violations": violations,
    }));
    out.row("balance_constant", Some(lmax), None, c);
    out.row("slope_violations", Some(lmax), None, violations.len());
    Ok(out)
}

fn codim_report(out: &mut Out, r: &codim::CodimResult) {
    let quantity = match (r.k.is_some(), r.unital) {
        (true, false) => "c_{k,n-k}",
        (true, true) => "c_{k,n-k}#",
        (false, false) => "c_n",
        (false, true) => "c_n#",
    };
    out.row(quantity, Some(r.n), r.k, r.value);
    out.push(r);
}

fn graded_report(out: &mut Out, r: &codim::GradedCodimResult) {
    let q = if r.unital { "c_n^gr#" } else { "c_n^gr" };
    out.row(q, Some(r.n), None, r.value);
    for p in &r.partials {
        let q = if r.unital { "c_{k,n-k}#" } else { "c_{k,n-k}" };
        out.row(q, Some(r.n), p.k, p.value);
    }
    out.push(r);
}

fn window_report(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    range: std::ops::RangeInclusive<usize>,
    budget: &Budget,
) -> Result<Out> {
    let mut out = Out::new("window");
    for n in range {
        let w = codim::nonzero_window(spec, grading, n, budget)?;
        out.push(json!({
            "n": n,
            "ks": w.ks,
            "deviations": w.deviations.iter().map(|d| d.to_f64()).collect::<Vec<_>>(),
            "deviations_exact": w.deviations.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "max_deviation": w.max_deviation.map(|d| d.to_f64()),
            "max_deviation_exact": w.max_deviation.map(|d| d.to_string()),
            "beta": w.beta.to_string(),
        }));
        if let Some(d) = w.max_deviation {
            out.row("max_deviation", Some(n), None, d.to_f64());
        }
    }
    Ok(out)
}

fn relfree_report(out: &mut Out, r: &codim::RelfreeResult) {
    let q = if r.unital { "dim_R#" } else { "dim_R" };
    out.row(q, Some(r.k + r.nk), Some(r.k), r.value);
    out.push(r);
}

/// `β`, `Φ(β)`, roots of the given codimension sequences, and the
/// closed-form grids that do not depend on the algebra.
fn asymptotics_report(spec: &AlgebraSpec, n_min: usize, ordinary: &[u128], graded: &[u128]) -> Result<Out> {
    let mut out = Out::new("asymptotics");
    let beta_q = spec.beta();
    let beta = Real::from_quadratic(&beta_q);
    let phi_beta = asym::phi2(&beta)?;
    let big = |v: &[u128]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    let roots_ord = asym::root_sequence(n_min, &big(ordinary))?;
    let roots_gr = asym::root_sequence(n_min, &big(graded))?;

    let mut constrained = Vec::new();
    let mut constrained_gap = 0f64;
    for g in asym::gamma_grid() {
        let closed = asym::lemma9_max(g)?;
        let (argmax, numeric) = asym::numeric_max_phi_constrained(g, asym::MIN_NUMERIC_TOL)?;
        let diff = (closed.maximum.to_f64() - numeric).abs();
        constrained_gap = constrained_gap.max(diff);
        constrained.push(json!({
            "gamma": g,
            "maximum": closed.maximum,
            "inverse_xtilde": closed.inverse_xtilde,
            "xtilde": closed.xtilde,
            "numeric_maximum": numeric,
            "numeric_argmax": argmax,
            "difference": diff,
        }));
    }
    let identity = asym::phi_identity_grid(&asym::gamma_grid())?;

    let mut sandwich_failures = Vec::new();
    let mut checked = 0usize;
    for n in 1..=60 {
        for k in 0..=n {
            checked += 1;
            let s = asym::binomial_phi_sandwich(n, k)?;
            if !s.holds {
                sandwich_failures.push(json!({ "n": n, "k": k }));
            }
        }
    }

    out.row("beta", None, None, beta.to_f64());
    out.row("phi_beta", None, None, phi_beta.to_f64());
    for (n, r) in roots_ord.ns.iter().zip(&roots_ord.roots) {
        out.row("root_c_n", Some(*n), None, r.to_f64());
    }
    for (n, r) in roots_gr.ns.iter().zip(&roots_gr.roots) {
        out.row("root_c_n^gr", Some(*n), None, r.to_f64());
    }
    out.row("constrained_max_difference", None, None, constrained_gap);
    out.row(
        "phi_identity_max_difference",
        None,
        None,
        identity.max_difference.to_f64(),
    );
    out.row("sandwich_failures", None, None, sandwich_failures.len());
    out.push(json!({
        "beta": beta_q.to_string(),
        "beta_f64": beta,
        "phi_beta": phi_beta,
        "roots_ordinary": roots_ord,
        "roots_graded": roots_gr,
        "constrained_max": constrained,
        "constrained_max_difference": constrained_gap,
        "phi_identity": identity,
        "sandwich": { "n_max": 60, "checked": checked.to_string(), "failures": sandwich_failures },
    }));
    Ok(out)
}

fn bounds_out(
    spec: &AlgebraSpec,
    grading: GradingSpec,
    table: &CodimTable,
    epsilon: f64,
    budget: &Budget,
) -> Result<Out> {
    let mut out = Out::new("verify-bounds");
    let reports = asym::bounds_report(spec, grading, table, epsilon, budget.scan_budget)?;
    for r in &reports {
        for e in &r.entries {
            out.row(&format!("{}.left", r.name), Some(e.n), e.k, &e.left);
            out.row(&format!("{}.right", r.name), Some(e.n), e.k, &e.right);
            out.row(&format!("{}.holds", r.name), Some(e.n), e.k, e.holds);
        }
    }
    out.push(json!({ "table": table, "reports": reports }));
    Ok(out)
}

/// Executes a resolved configuration.
pub fn run(config: &RunConfig) -> Result<ReportEnvelope> {
    let start = Instant::now();
    let budget = config.budget();
    let out = match config.command.as_str() {
        "word" => word_report(&config.word_source()?, config.length.unwrap_or(64)),
        "complexity" => complexity_report(&config.word_source()?, config.n_max.unwrap_or(1), &budget)?,
        "balance" => balance_report(&config.word_source()?, config.length.unwrap_or(1), &budget)?,
        "codim" => {
            let spec = config.spec()?;
            let mut out = Out::new("codim");
            for n in config.range() {
                codim_report(&mut out, &codim::codim(&spec, n, config.unital == Some(true), &budget)?);
            }
            out
        }
        "graded-codim" => {
            let spec = config.spec()?;
            let mut out = Out::new("graded-codim");
            for n in config.range() {
                let r = codim::graded_codim(&spec, config.grading(), n, config.unital == Some(true), &budget)?;
                graded_report(&mut out, &r);
            }
            out
        }
        "partial-codim" => {
            let spec = config.spec()?;
            let mut out = Out::new("partial-codim");
            let (k, nk) = (config.k.unwrap_or(0), config.nk.unwrap_or(0));
            let r = codim::partial_graded_codim(&spec, config.grading(), k, nk, config.unital == Some(true), &budget)?;
            codim_report(&mut out, &r);
            out
        }
        "window" => window_report(&config.spec()?, config.grading(), config.range(), &budget)?,
        "relfree" => {
            let spec = config.spec()?;
            let mut out = Out::new("relfree");
            let r = codim::relfree_dim(
                &spec,
                config.grading(),
                config.d0.unwrap_or(0),
                config.d1.unwrap_or(0),
                config.k.unwrap_or(0),
                config.nk.unwrap_or(0),
                config.unital == Some(true),
                &budget,
            )?;
            relfree_report(&mut out, &r);
            out
        }
        "asymptotics" => {
            let spec = config.spec()?;
            let (mut ord, mut gr) = (Vec::new(), Vec::new());
            for n in config.range() {
                ord.push(codim::codim(&spec, n, false, &budget)?.value);
                gr.push(codim::graded_codim(&spec, config.grading(), n, false, &budget)?.value);
            }
            asymptotics_report(&spec, config.n_min.unwrap_or(1), &ord, &gr)?
        }
        "verify-bounds" => {
            let spec = config.spec()?;
            let table_config = config.table.unwrap_or_default();
            let table = CodimTable::compute(&spec, config.grading(), &table_config, &budget)?;
            bounds_out(&spec, config.grading(), &table, config.epsilon.unwrap_or(0.05), &budget)?
        }
        "report-all" => report_all(config, &budget)?,
        other => return Err(Error::invalid(format!("unknown command {other:?}"))),
    };
    Ok(ReportEnvelope {
        schema: SCHEMA,
        tool: TOOL,
        version: VERSION,
        config: config.clone(),
        results: out.results,
        timing_ms: config.record_timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        rows: out.rows,
    })
}

fn report_all(config: &RunConfig, budget: &Budget) -> Result<Out> {
    let spec = config.spec()?;
    let grading = config.grading();
    let ws = spec.word().clone();
    let table_config = config.table.unwrap_or_default();
    let table = CodimTable::compute(&spec, grading, &table_config, budget)?;
    let mut out = Out::new("report-all");

    out.section("word", word_report(&ws, 64));
    out.section("complexity", complexity_report(&ws, 30, budget)?);
    out.section("balance", balance_report(&ws, 30, budget)?);

    let mut c = Out::new("codim");
    for (i, &v) in table.ordinary.iter().enumerate() {
        c.push(json!({ "n": i + 1, "value": v.to_string(), "unital": false }));
        c.row("c_n", Some(i + 1), None, v);
    }
    for (i, &v) in table.ordinary_unital.iter().enumerate() {
        c.push(json!({ "n": i + 1, "value": v.to_string(), "unital": true }));
        c.row("c_n#", Some(i + 1), None, v);
    }
    out.section("codim", c);

    let mut g = Out::new("graded-codim");
    for r in table.graded.iter().chain(&table.graded_unital) {
        graded_report(&mut g, r);
    }
    out.section("graded-codim", g);

    out.section("window", window_report(&spec, grading, 1..=table_config.n_max, budget)?);

    let mut rf = Out::new("relfree");
    for r in table.relfree.iter().chain(&table.relfree_unital) {
        relfree_report(&mut rf, r);
    }
    out.section("relfree", rf);

    let gr: Vec<u128> = table.graded.iter().map(|g| g.value).collect();
    out.section("asymptotics", asymptotics_report(&spec, 1, &table.ordinary, &gr)?);
    out.section(
        "verify-bounds",
        bounds_out(&spec, grading, &table, config.epsilon.unwrap_or(0.05), budget)?,
    );
    Ok(out)
}

/// Exit code for an error: 3 when a budget was exhausted, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INVALID
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = RunConfig::resolve(&cli.command).and_then(|config| {
        let text = run(&config)?.render()?;
        match &config.output {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::invalid(format!("cannot write {path}: {e}"))),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::invalid(format!("cannot write to standard output: {e}"))),
        }
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn envelope(args: &[&str]) -> Result<ReportEnvelope> {
        let cli = Cli::try_parse_from(std::iter::once("codim-lab").chain(args.iter().copied())).unwrap();
        run(&RunConfig::resolve(&cli.command)?)
    }

    #[test]
    fn codim_command() {
        let e = envelope(&["codim", "--m", "2", "--word", "fib", "--n", "3"]).unwrap();
        assert_eq!(e.results[0]["n"], 3);
        assert_eq!(e.results[0]["value"], "6");
        let json = e.to_json();
        assert!(json.contains("\"schema\": 1") && json.contains("\"timing_ms\": null"));
        assert_eq!(e.config.word.as_deref(), Some("mech:3,-1,5,2"));
    }

    #[test]
    fn graded_command_and_csv() {
        let mut e = envelope(&[
            "graded-codim",
            "--m",
            "2",
            "--word",
            "fib",
            "--grading",
            "001",
            "--n",
            "2",
        ])
        .unwrap();
        assert_eq!(e.results[0]["value"], "8");
        e.config.format = Format::Csv;
        let csv = e.render().unwrap();
        assert!(csv.starts_with("command,quantity,n,k,value\n"));
        assert!(csv.contains("graded-codim,c_n^gr,2,,8"));
    }

    #[test]
    fn ranges_and_errors() {
        assert_eq!("2..5".parse::<NRange>().unwrap(), NRange { min: 2, max: 5 });
        assert!("0".parse::<NRange>().is_err());
        assert!("5..2".parse::<NRange>().is_err());
        let err = envelope(&["codim", "--word", "periodic:", "--n", "2"]).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_INVALID);
        let err = envelope(&["codim", "--n", "6", "--max-columns", "10"]).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_BUDGET);
        assert!(err.to_string().contains("720"));
    }
}
