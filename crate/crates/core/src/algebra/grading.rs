//! Z₂-gradings generated by homogeneous `z_1^{(1)}`, `a`, `b`, and the
//! equivalence classes of `z`-starts used to deduplicate evaluations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{AlgebraSpec, BasisElement};
use crate::error::{Error, Result};
use crate::words::{self, stable_scan, LetterWord};

/// Parities of the generators `z_1^{(1)}`, `a`, `b`, written `"<dz><da><db>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingSpec {
    pub dz: u8,
    pub da: u8,
    pub db: u8,
}

impl GradingSpec {
    pub fn new(dz: u8, da: u8, db: u8) -> Result<Self> {
        if dz > 1 || da > 1 || db > 1 {
            return Err(Error::invalid("grading parities must be 0 or 1"));
        }
        Ok(GradingSpec { dz, da, db })
    }

    /// `z_1^{(1)}` and `a` even, `b` odd.
    pub fn main() -> Self {
        GradingSpec { dz: 0, da: 0, db: 1 }
    }

    pub fn trivial() -> Self {
        GradingSpec { dz: 0, da: 0, db: 0 }
    }

    /// All eight gradings in the order `000, 001, …, 111`.
    pub fn all() -> Vec<Self> {
        (0..8u8)
            .map(|c| GradingSpec {
                dz: (c >> 2) & 1,
                da: (c >> 1) & 1,
                db: c & 1,
            })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::trivial()
    }

    /// Parity of a letter code (`a` ↦ 0, `b` ↦ 1).
    pub fn letter_parity(&self, letter: u8) -> u8 {
        if letter == super::LETTER_A {
            self.da
        } else {
            self.db
        }
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.dz, self.da, self.db)
    }
}

impl FromStr for GradingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    position: i,
                    message: format!("grading digit must be 0 or 1, found {c:?}"),
                }),
            })
            .collect::<Result<_>>()?;
        if bits.len() != 3 {
            return Err(Error::Parse {
                position: bits.len().min(3),
                message: "grading must have exactly three digits (dz, da, db)".into(),
            });
        }
        GradingSpec::new(bits[0], bits[1], bits[2])
    }
}

impl Serialize for GradingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parity of a basis element: `z_j^{(i)}` has parity
/// `dz + (i−1)·db + ((j−1) + Σ_{l<i}(k_l − 1))·da`; the unit is even.
pub fn element_parity(spec: &AlgebraSpec, grading: GradingSpec, e: BasisElement) -> u8 {
    match e {
        BasisElement::A => grading.da,
        BasisElement::B => grading.db,
        BasisElement::One => 0,
        BasisElement::Z { i, j } => {
            let mut a_steps = (j - 1) as u64;
            for l in 1..i {
                a_steps += (spec.k(l) - 1) as u64;
            }
            ((grading.dz as u64 + (i - 1) * grading.db as u64 + a_steps * grading.da as u64) % 2) as u8
        }
    }
}

/// Class of the start `z_j^{(i)}` for products of degree at most `n`:
/// `j` together with `w_i … w_{i+n−2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StartKey {
    pub j: u32,
    pub window: LetterWord,
}

/// The distinct start classes for degree `n`; two starts with the same key
/// give identical left-normed products of up to `n − 1` letters.
pub fn start_keys(spec: &AlgebraSpec, n: usize, scan_budget: usize) -> Result<BTreeSet<StartKey>> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let len = (n - 1).max(1);
    let fs = words::factors(spec.word(), len, scan_budget)?;
    let mut keys = BTreeSet::new();
    for f in &fs.factors {
        let k = spec.m() + f.letters()[0] as u32;
        let window = LetterWord::new(f.letters()[..n - 1].to_vec())?;
        for j in 1..=k {
            keys.insert(StartKey {
                j,
                window: window.clone(),
            });
        }
    }
    Ok(keys)
}

/// A start class refined by the parity data needed under any grading:
/// `(i − 1) mod 2` and `Σ_{l<i}(k_l − 1) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedStartKey {
    pub j: u32,
    pub window: LetterWord,
    pub b_phase: u8,
    pub a_phase: u8,
}

impl GradedStartKey {
    pub fn parity(&self, grading: GradingSpec) -> u8 {
        (grading.dz + self.b_phase * grading.db + ((self.j - 1) as u8 % 2 + self.a_phase) % 2 * grading.da) % 2
    }

    /// `k` of the start's own segment.
    pub fn k(&self, m: u32) -> u32 {
        m + self.window.letters().first().copied().unwrap_or(0) as u32
    }
}

/// Graded start classes for degree `n`, scanning segment indices with the
/// doubling rule of [`words::factors`].
pub fn graded_start_keys(spec: &AlgebraSpec, n: usize, scan_budget: usize) -> Result<BTreeSet<GradedStartKey>> {
    graded_start_keys_with_window(spec, n, scan_budget, words::MIN_SCAN_WINDOW)
}

/// As [`graded_start_keys`] with an explicit initial scan window.
pub fn graded_start_keys_with_window(
    spec: &AlgebraSpec,
    n: usize,
    scan_budget: usize,
    min_window: usize,
) -> Result<BTreeSet<GradedStartKey>> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    // The window always includes w_i, which fixes the range of j.
    let len = (n - 1).max(1);
    let ws = spec.word();
    let mut buf: Vec<u8> = Vec::new();
    let mut a_phase = 0u8;
    // Start from twice the window recurrence bound: for periodic words the
    // window and both phases repeat after twice the period.
    let hint = ws
        .recurrence_bound(len)
        .map_or(0, |b| usize::try_from(b.saturating_mul(2)).unwrap_or(usize::MAX));
    let (raw, _) = stable_scan(len, scan_budget, min_window.max(len).max(hint), |pos| {
        while buf.len() < pos + len {
            buf.push(ws.letter(buf.len() as u64 + 1));
        }
        let key = (buf[pos..pos + len].to_vec(), (pos % 2) as u8, a_phase);
        // advance Σ_{l ≤ i}(k_l − 1) for the next segment
        a_phase = (a_phase + ((spec.m() - 1 + buf[pos] as u32) % 2) as u8) % 2;
        key
    })?;
    let mut keys = BTreeSet::new();
    for (window, b_phase, a_phase) in raw {
        let k = spec.m() + window[0] as u32;
        let window = LetterWord::new(window[..n - 1].to_vec())?;
        for j in 1..=k {
            keys.insert(GradedStartKey {
                j,
                window: window.clone(),
                b_phase,
                a_phase,
            });
        }
    }
    Ok(keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::WordSource;

    fn fib() -> AlgebraSpec {
        AlgebraSpec::new(2, WordSource::fibonacci()).unwrap()
    }

    #[test]
    fn parse_gradings() {
        assert_eq!("001".parse::<GradingSpec>().unwrap(), GradingSpec::main());
        assert!("01".parse::<GradingSpec>().is_err());
        assert!(matches!(
            "0x1".parse::<GradingSpec>(),
            Err(Error::Parse { position: 1, .. })
        ));
        assert_eq!(GradingSpec::all().len(), 8);
    }

    #[test]
    fn parities() {
        let s = fib();
        let g = GradingSpec::main();
        assert_eq!(element_parity(&s, g, BasisElement::z(2, 1)), 1);
        assert_eq!(element_parity(&s, g, BasisElement::A), 0);
        assert_eq!(element_parity(&s, g, BasisElement::B), 1);
        for e in [BasisElement::A, BasisElement::B, BasisElement::z(3, 2)] {
            assert_eq!(element_parity(&s, GradingSpec::trivial(), e), 0);
        }
    }

    #[test]
    fn keys() {
        let p = AlgebraSpec::new(2, WordSource::periodic("0".parse().unwrap()).unwrap()).unwrap();
        let k: Vec<_> = start_keys(&p, 3, 100_000)
            .unwrap()
            .into_iter()
            .map(|k| (k.j, k.window.to_string()))
            .collect();
        assert_eq!(k, vec![(1, "00".to_string()), (2, "00".to_string())]);

        let k = start_keys(&fib(), 1, 100_000).unwrap();
        assert_eq!(k.iter().map(|k| k.j).collect::<Vec<_>>(), vec![1, 2, 3]);

        let k = start_keys(&fib(), 2, 100_000).unwrap();
        assert_eq!(k.len(), 5); // j ≤ 2 with window 0, j ≤ 3 with window 1
    }

    #[test]
    fn graded_keys_agree_with_direct_parity() {
        let s = fib();
        let keys = graded_start_keys(&s, 4, 100_000).unwrap();
        for i in 1..40u64 {
            let window = s.word().segment(i, 3);
            let b_phase = ((i - 1) % 2) as u8;
            let a_phase = ((1..i).map(|l| s.k(l) as u64 - 1).sum::<u64>() % 2) as u8;
            for j in 1..=s.k(i) {
                let key = GradedStartKey {
                    j,
                    window: window.clone(),
                    b_phase,
                    a_phase,
                };
                assert!(keys.contains(&key), "missing start i={i} j={j}");
                for g in GradingSpec::all() {
                    assert_eq!(key.parity(g), element_parity(&s, g, BasisElement::z(i, j)));
                }
            }
        }
    }
}
