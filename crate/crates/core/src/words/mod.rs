//! Infinite binary words: periodic, mechanical (Sturmian) and substitutive.
//!
//! Every quantity here is exact. Letters of mechanical words are computed by
//! integer comparisons in Q(√d), heights and slopes are rationals, and slope
//! deviations are compared as quadratic numbers.

mod quadratic;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use quadratic::{QuadraticIrrational, QuadraticNumber, Slope};

/// A finite word over {0, 1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterWord(Vec<u8>);

impl LetterWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&b| b > 1) {
            return Err(Error::invalid(format!(
                "letter {} at position {pos} is not a bit",
                letters[pos]
            )));
        }
        Ok(LetterWord(letters))
    }

    pub fn empty() -> Self {
        LetterWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of ones.
    pub fn height(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// `(h, |x|, h/|x|)`; the slope of the empty word is undefined.
    pub fn height_slope(&self) -> Result<(usize, usize, Rational64)> {
        if self.0.is_empty() {
            return Err(Error::EmptySlope);
        }
        let h = self.height();
        Ok((h, self.len(), Rational64::new(h as i64, self.len() as i64)))
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for LetterWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    position: i,
                    message: format!("expected 0 or 1, found {c:?}"),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(LetterWord)
    }
}

impl Serialize for LetterWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Convenience wrapper around [`LetterWord::height_slope`].
pub fn height_slope(x: &LetterWord) -> Result<(usize, usize, Rational64)> {
    x.height_slope()
}

/// Built-in substitution systems whose fixed point starting with 0 is the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Substitution {
    /// 0 → 01, 1 → 0.
    Fibonacci,
    /// 0 → 01, 1 → 10.
    ThueMorse,
}

impl Substitution {
    pub fn image(&self, letter: u8) -> &'static [u8] {
        match (self, letter) {
            (Substitution::Fibonacci, 0) => &[0, 1],
            (Substitution::Fibonacci, _) => &[0],
            (Substitution::ThueMorse, 0) => &[0, 1],
            (Substitution::ThueMorse, _) => &[1, 0],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Substitution::Fibonacci => "fibonacci",
            Substitution::ThueMorse => "thue-morse",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "fibonacci" | "fib" => Some(Substitution::Fibonacci),
            "thue-morse" | "thuemorse" | "tm" => Some(Substitution::ThueMorse),
            _ => None,
        }
    }

    /// Letter at 0-based position `pos` of the fixed point, by descending
    /// through the levels `σ^k(0)` without materializing them.
    fn letter_at(&self, pos: u64) -> u8 {
        // lens[k][c] = |σ^k(c)|
        let mut lens: Vec<[u64; 2]> = vec![[1, 1]];
        while lens.last().unwrap()[0] <= pos {
            let prev = *lens.last().unwrap();
            let next = [0u8, 1].map(|c| self.image(c).iter().map(|&x| prev[x as usize]).sum());
            lens.push(next);
        }
        let mut letter = 0u8;
        let mut pos = pos;
        for k in (1..lens.len()).rev() {
            for &c in self.image(letter) {
                let l = lens[k - 1][c as usize];
                if pos < l {
                    letter = c;
                    break;
                }
                pos -= l;
            }
        }
        letter
    }

    fn slope(&self) -> Slope {
        match self {
            Substitution::Fibonacci => Slope::Quadratic(QuadraticIrrational::fibonacci_slope()),
            Substitution::ThueMorse => Slope::Rational(Rational64::new(1, 2)),
        }
    }
}

/// A finitely described infinite binary word `w_1 w_2 …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordSource {
    Periodic(LetterWord),
    Mechanical { alpha: Slope, rho: Rational64 },
    Substitution(Substitution),
}

impl WordSource {
    pub fn periodic(pattern: LetterWord) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::invalid("periodic pattern must be nonempty"));
        }
        Ok(WordSource::Periodic(pattern))
    }

    pub fn mechanical(alpha: Slope, rho: Rational64) -> Result<Self> {
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        if alpha.cmp_rational(zero).is_le() || alpha.cmp_rational(one).is_ge() {
            return Err(Error::invalid(format!(
                "mechanical slope {alpha} must lie strictly between 0 and 1"
            )));
        }
        if rho < zero || rho >= one {
            return Err(Error::invalid(format!("intercept {rho} must lie in [0, 1)")));
        }
        Ok(WordSource::Mechanical { alpha, rho })
    }

    /// The mechanical word of slope (3 − √5)/2 and intercept 0.
    pub fn fibonacci() -> Self {
        WordSource::Mechanical {
            alpha: Slope::Quadratic(QuadraticIrrational::fibonacci_slope()),
            rho: Rational64::from_integer(0),
        }
    }

    /// The letter `w_i` for `i ≥ 1`.
    pub fn letter(&self, i: u64) -> u8 {
        assert!(i >= 1, "word positions start at 1");
        match self {
            WordSource::Periodic(p) => p.letters()[((i - 1) % p.len() as u64) as usize],
            WordSource::Mechanical { alpha, rho } => {
                let a = alpha.number();
                let r = QuadraticNumber::from(*rho);
                let at = |t: u64| a.mul_int(t as i128).add(&r).floor();
                (at(i + 1) - at(i)) as u8
            }
            WordSource::Substitution(s) => s.letter_at(i - 1),
        }
    }

    /// `w_1 … w_n`.
    pub fn prefix(&self, n: usize) -> LetterWord {
        self.segment(1, n)
    }

    /// `w_start … w_{start+len−1}`.
    pub fn segment(&self, start: u64, len: usize) -> LetterWord {
        LetterWord((0..len as u64).map(|t| self.letter(start + t)).collect())
    }

    /// The slope (frequency of ones) of the infinite word.
    pub fn slope(&self) -> Slope {
        match self {
            WordSource::Periodic(p) => Slope::Rational(Rational64::new(p.height() as i64, p.len() as i64)),
            WordSource::Mechanical { alpha, .. } => *alpha,
            WordSource::Substitution(s) => s.slope(),
        }
    }

    /// A number of starting positions `N` such that the factors of length `n`
    /// starting at positions `1..=N` are all the factors of length `n`, when
    /// one is known: the period for periodic and rational mechanical words,
    /// and `q_k + q_{k+1}` for irrational mechanical words, where
    /// `q_k ≤ n < q_{k+1}` are continued-fraction denominators of the slope
    /// (every factor of length `n + q_k + q_{k+1} − 1` contains every factor of
    /// length `n`). `None` for substitutive words or on overflow.
    pub fn recurrence_bound(&self, n: usize) -> Option<u64> {
        match self {
            WordSource::Periodic(p) => Some(p.len() as u64),
            WordSource::Mechanical {
                alpha: Slope::Rational(r),
                ..
            } => Some(*r.denom() as u64),
            WordSource::Mechanical {
                alpha: Slope::Quadratic(q),
                ..
            } => {
                let (mut prev, mut cur) = (0u64, 1u64);
                let mut x = q.number();
                loop {
                    let frac = x.sub(&QuadraticNumber::from_integer(x.floor()));
                    x = frac.recip();
                    let a = u64::try_from(x.floor()).ok()?;
                    let next = a.checked_mul(cur)?.checked_add(prev)?;
                    if next > n as u64 {
                        return cur.checked_add(next);
                    }
                    (prev, cur) = (cur, next);
                }
            }
            WordSource::Substitution(_) => None,
        }
    }

    /// Canonical textual form, accepted back by the CLI word-spec parser.
    pub fn spec_string(&self) -> String {
        match self {
            WordSource::Periodic(p) => format!("periodic:{p}"),
            WordSource::Mechanical { alpha, rho } => {
                let base = match alpha {
                    Slope::Rational(r) => format!("mech:{}/{}", r.numer(), r.denom()),
                    Slope::Quadratic(q) => {
                        let (p, q, d, r) = q.number().parts();
                        format!("mech:{p},{q},{d},{r}")
                    }
                };
                if *rho.numer() == 0 {
                    base
                } else {
                    format!("{base};rho={}/{}", rho.numer(), rho.denom())
                }
            }
            WordSource::Substitution(s) => format!("sub:{}", s.name()),
        }
    }
}

impl fmt::Display for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// The length-`n` factors of a word found by a stabilized scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    pub n: usize,
    pub factors: BTreeSet<LetterWord>,
    /// Number of starting positions examined.
    pub scan_window: usize,
}

impl FactorSet {
    pub fn complexity(&self) -> usize {
        self.factors.len()
    }
}

/// Smallest scan window tried before doubling.
pub const MIN_SCAN_WINDOW: usize = 32;

/// Collect the factors of length `n` starting at positions `1..=W`, doubling
/// `W` until a further `W` positions contribute nothing new. `W` starts no
/// lower than [`WordSource::recurrence_bound`] when one is known.
pub fn factors(ws: &WordSource, n: usize, scan_budget: usize) -> Result<FactorSet> {
    factors_with_window(ws, n, scan_budget, MIN_SCAN_WINDOW)
}

/// As [`factors`], starting the doubling from `min_window` positions.
pub fn factors_with_window(ws: &WordSource, n: usize, scan_budget: usize, min_window: usize) -> Result<FactorSet> {
    if n == 0 {
        return Err(Error::invalid("factor length must be at least 1"));
    }
    let hint = ws
        .recurrence_bound(n)
        .map_or(0, |b| usize::try_from(b).unwrap_or(usize::MAX));
    let mut buf: Vec<u8> = Vec::new();
    let (factors, scan_window) = stable_scan(n, scan_budget, min_window.max(n).max(hint), |pos| {
        while buf.len() < pos + n {
            buf.push(ws.letter(buf.len() as u64 + 1));
        }
        LetterWord(buf[pos..pos + n].to_vec())
    })?;
    Ok(FactorSet {
        n,
        factors,
        scan_window,
    })
}

/// Collect `key_at(0), key_at(1), …` over positions `0..W`, doubling `W`
/// until a further `W` positions add no new key. `key_at` is called once per
/// position, in increasing order. Returns the keys and the number of
/// positions examined; fails once `2W` would exceed `scan_budget`.
/// `length` only labels the budget error.
pub fn stable_scan<K: Ord>(
    length: usize,
    scan_budget: usize,
    min_window: usize,
    mut key_at: impl FnMut(usize) -> K,
) -> Result<(BTreeSet<K>, usize)> {
    let mut w = min_window.max(1);
    let mut set = BTreeSet::new();
    let mut scanned = 0usize;
    loop {
        if 2 * w > scan_budget {
            return Err(Error::ScanBudget {
                length,
                budget: scan_budget,
            });
        }
        while scanned < w {
            set.insert(key_at(scanned));
            scanned += 1;
        }
        let mut fresh = false;
        while scanned < 2 * w {
            fresh |= set.insert(key_at(scanned));
            scanned += 1;
        }
        if !fresh {
            return Ok((set, scanned));
        }
        w *= 2;
    }
}

/// `Comp_w(n)`, the number of distinct factors of length `n`.
pub fn complexity(ws: &WordSource, n: usize, scan_budget: usize) -> Result<usize> {
    Ok(factors(ws, n, scan_budget)?.complexity())
}

/// `max_{ℓ ≤ lmax} max |h(x) − h(y)|` over pairs of length-ℓ factors.
pub fn balance_constant(ws: &WordSource, lmax: usize, scan_budget: usize) -> Result<usize> {
    if lmax == 0 {
        return Err(Error::invalid("Lmax must be at least 1"));
    }
    let mut c = 0;
    for l in 1..=lmax {
        let fs = factors(ws, l, scan_budget)?;
        let heights = fs.factors.iter().map(LetterWord::height);
        let (lo, hi) = heights.fold((usize::MAX, 0), |(lo, hi), h| (lo.min(h), hi.max(h)));
        c = c.max(hi - lo);
    }
    Ok(c)
}

/// One factor with its scaled slope deviation `|π(u) − α|·|u| = |h(u) − α|u||`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeDeviation {
    pub factor: LetterWord,
    pub scaled_deviation: QuadraticNumber,
    pub exceeds_bound: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeDeviationReport {
    pub alpha: Slope,
    pub bound: usize,
    pub entries: Vec<SlopeDeviation>,
}

impl SlopeDeviationReport {
    pub fn violations(&self) -> impl Iterator<Item = &SlopeDeviation> {
        self.entries.iter().filter(|e| e.exceeds_bound)
    }

    pub fn max_deviation(&self) -> Option<QuadraticNumber> {
        self.entries.iter().map(|e| e.scaled_deviation).max()
    }
}

/// Scaled slope deviation of every factor of length at most `lmax`, flagged
/// against the bound `c` by exact comparison.
pub fn slope_deviation_report(
    ws: &WordSource,
    lmax: usize,
    c: usize,
    scan_budget: usize,
) -> Result<SlopeDeviationReport> {
    let alpha = ws.slope();
    let a = alpha.number();
    let bound = QuadraticNumber::from_integer(c as i128);
    let mut entries = Vec::new();
    for l in 1..=lmax {
        for u in factors(ws, l, scan_budget)?.factors {
            let dev = QuadraticNumber::from_integer(u.height() as i128)
                .sub(&a.mul_int(l as i128))
                .abs();
            entries.push(SlopeDeviation {
                exceeds_bound: dev > bound,
                factor: u,
                scaled_deviation: dev,
            });
        }
    }
    Ok(SlopeDeviationReport {
        alpha,
        bound: c,
        entries,
    })
}
