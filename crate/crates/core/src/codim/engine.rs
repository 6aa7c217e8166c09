//! Evaluation matrices for arbitrary monomial spaces.
//!
//! Each variable is substituted by a generic combination of basis elements
//! of its parity. A row is the coefficient of one monomial in those generic
//! coefficients together with one target basis element; its entry at a
//! column counts the ways of assigning values to the occurrences of the
//! column's monomial that produce the target. For multilinear monomials the
//! entries are 0/1 and a row is a single substitution of basis elements.
//!
//! Rows for `z`-starts with the same trace coincide, so a row is keyed by the
//! variable carrying the `z`, the per-variable counts of unit, `a` and `b`
//! values, and the trace read after the `z`.

use std::collections::HashMap;

use super::monomial::{arrangements, MonomialSpace, Shape};
use super::rank::{Deadline, SparseMatrix};
use super::traces::TraceCatalog;
use crate::algebra::{GradingSpec, LETTER_A};
use crate::error::{Error, Result};
use crate::words::LetterWord;

/// Value of one occurrence, or of a subtree, under a symbolic assignment.
#[derive(Clone, Copy, Debug)]
enum Sym {
    Unit,
    Letter(u8),
    /// `z` at occurrence `z` followed by `len` letter occurrences packed
    /// four bits each in `occs`.
    Chain {
        z: u8,
        len: u8,
        occs: u64,
    },
    Dead,
}

fn mul(l: Sym, r: Sym) -> Sym {
    match (l, r) {
        (Sym::Dead, _) | (_, Sym::Dead) => Sym::Dead,
        (Sym::Unit, x) | (x, Sym::Unit) => x,
        (Sym::Chain { z, len, occs }, Sym::Letter(o)) => Sym::Chain {
            z,
            len: len + 1,
            occs: occs | (o as u64) << (4 * len),
        },
        _ => Sym::Dead,
    }
}

/// The role of each occurrence: 0 letter, 1 unit, 2 the `z`.
fn evaluate(shape: &Shape, roles: &[u8], stack: &mut Vec<Sym>) -> Sym {
    stack.clear();
    let mut occ = 0u8;
    for &node in shape {
        if node {
            let r = stack.pop().unwrap();
            let l = stack.pop().unwrap();
            stack.push(mul(l, r));
        } else {
            stack.push(match roles[occ as usize] {
                0 => Sym::Letter(occ),
                1 => Sym::Unit,
                _ => Sym::Chain {
                    z: occ,
                    len: 0,
                    occs: 0,
                },
            });
            occ += 1;
        }
    }
    stack.pop().unwrap()
}

/// What a row is the coefficient of.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowTarget {
    /// All occurrences are the unit.
    One,
    /// A single `a` (or `b`) with every other occurrence the unit.
    Letter(u8),
    /// A `z`-start of the variable's parity followed by this trace.
    Trace(LetterWord),
}

/// A row of the evaluation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    /// The variable one of whose occurrences is the `z`.
    pub z_var: Option<u8>,
    /// Per variable: occurrences sent to the unit, to `a`, to `b`.
    pub counts: Vec<[u8; 3]>,
    pub target: RowTarget,
}

/// Columns of an evaluation matrix as sparse vectors over its rows.
pub struct EngineOutput {
    /// One vector per column, in column order; coordinates are row ids.
    pub columns: SparseMatrix,
    pub rows: Vec<RowKey>,
}

struct Interner {
    /// `degree + 1` per variable; each count is a digit in this base.
    base: Vec<u128>,
    /// Id of the first trace of each parity and length.
    trace_offset: [Vec<u128>; 2],
    ids: HashMap<u128, u32>,
    keys: Vec<RowKey>,
}

impl Interner {
    fn new(space: &MonomialSpace, catalog: &TraceCatalog) -> Result<Self> {
        let mut trace_offset = [Vec::new(), Vec::new()];
        let mut next = 0u128;
        for p in 0..2u8 {
            for len in 0..catalog.degree() {
                trace_offset[p as usize].push(next);
                next += catalog.traces(p, len).len() as u128;
            }
        }
        // mixed radix: target (3 non-trace targets, then traces), z variable, counts
        let trace_base = next + 3;
        let mut base = Vec::new();
        let mut total: u128 = trace_base * (space.variables.len() as u128 + 1);
        for v in &space.variables {
            let d = v.degree as u128 + 1;
            total = total
                .checked_mul(d * d * d)
                .ok_or_else(|| Error::invalid("too many variables for the evaluation engine"))?;
            base.push(d);
        }
        Ok(Interner {
            base,
            trace_offset,
            ids: HashMap::new(),
            keys: Vec::new(),
        })
    }

    fn id(&mut self, key: impl FnOnce() -> RowKey, code: u128) -> u32 {
        if let Some(&id) = self.ids.get(&code) {
            return id;
        }
        let id = self.keys.len() as u32;
        self.ids.insert(code, id);
        self.keys.push(key());
        id
    }
}

/// Builds the evaluation matrix of `space` for `A(m, w)` (or `A#` when
/// `unital`) under `grading`, using traces from `catalog`.
pub fn build(
    space: &MonomialSpace,
    unital: bool,
    grading: GradingSpec,
    catalog: &TraceCatalog,
    deadline: Deadline,
) -> Result<EngineOutput> {
    let n = space.degree();
    if n > 15 {
        return Err(Error::invalid("the evaluation engine supports degree at most 15"));
    }
    assert_eq!(catalog.degree(), n, "trace catalog built for another degree");
    let nvars = space.variables.len();
    let parity: Vec<u8> = space.variables.iter().map(|v| v.parity).collect();
    let allow_a: Vec<bool> = parity.iter().map(|&p| p == grading.da).collect();
    let allow_b: Vec<bool> = parity.iter().map(|&p| p == grading.db).collect();
    let shapes = space.shapes();
    let mut interner = Interner::new(space, catalog)?;

    let mut columns: Vec<Vec<(u32, i64)>> = Vec::new();
    let mut roles = vec![0u8; n];
    let mut stack = Vec::with_capacity(n);
    let mut counts = vec![[0u8; 3]; nvars];
    let mut seq: Vec<u8> = Vec::with_capacity(n);
    let mut assigned: Vec<(u8, u8)> = Vec::with_capacity(n);

    for word in arrangements(&space.letters()) {
        if let Some(at) = deadline.at {
            if std::time::Instant::now() > at {
                return Err(Error::TimeBudget {
                    seconds: deadline.seconds,
                    stage: "matrix assembly".into(),
                });
            }
        }
        let unit_ok: Vec<usize> = if unital {
            (0..n).filter(|&o| parity[word[o] as usize] == 0).collect()
        } else {
            Vec::new()
        };
        for shape in &shapes {
            let mut entries: Vec<(u32, i64)> = Vec::new();
            for ones in 0u32..(1 << unit_ok.len()) {
                roles.iter_mut().for_each(|r| *r = 0);
                for (bit, &o) in unit_ok.iter().enumerate() {
                    if ones >> bit & 1 == 1 {
                        roles[o] = 1;
                    }
                }
                // products without a z
                match evaluate(shape, &roles, &mut stack) {
                    Sym::Unit => {
                        let id = row_id(
                            &mut interner,
                            &word,
                            &roles,
                            None,
                            &[],
                            0,
                            || RowTarget::One,
                            &mut counts,
                        );
                        entries.push((id, 1));
                    }
                    Sym::Letter(o) => {
                        let v = word[o as usize] as usize;
                        for (letter, ok) in [(0u8, allow_a[v]), (1u8, allow_b[v])] {
                            if ok {
                                let id = row_id(
                                    &mut interner,
                                    &word,
                                    &roles,
                                    None,
                                    &[(o, letter)],
                                    1 + letter as u128,
                                    || RowTarget::Letter(letter),
                                    &mut counts,
                                );
                                entries.push((id, 1));
                            }
                        }
                    }
                    _ => {}
                }
                // one occurrence carries the z
                for zo in 0..n {
                    if roles[zo] != 0 {
                        continue;
                    }
                    let zp = parity[word[zo] as usize];
                    if !catalog.has_start(zp) {
                        continue;
                    }
                    roles[zo] = 2;
                    let value = evaluate(shape, &roles, &mut stack);
                    roles[zo] = 0;
                    let Sym::Chain { len, occs, .. } = value else {
                        continue;
                    };
                    seq.clear();
                    seq.extend((0..len).map(|t| (occs >> (4 * t) & 15) as u8));
                    let offset = interner.trace_offset[zp as usize][len as usize];
                    'traces: for (idx, u) in catalog.traces(zp, len as usize).iter().enumerate() {
                        assigned.clear();
                        for (&o, &l) in seq.iter().zip(u.letters()) {
                            let v = word[o as usize] as usize;
                            let ok = if l == LETTER_A { allow_a[v] } else { allow_b[v] };
                            if !ok {
                                continue 'traces;
                            }
                            assigned.push((o, l));
                        }
                        let id = row_id(
                            &mut interner,
                            &word,
                            &roles,
                            Some(word[zo]),
                            &assigned,
                            3 + offset + idx as u128,
                            || RowTarget::Trace(u.clone()),
                            &mut counts,
                        );
                        entries.push((id, 1));
                    }
                }
            }
            columns.push(entries);
        }
    }
    let mut m = SparseMatrix::new(interner.keys.len());
    for c in columns {
        m.push_row(c);
    }
    Ok(EngineOutput {
        columns: m,
        rows: interner.keys,
    })
}

/// Interns the row for the given assignment; `target_code` identifies the
/// target (0 unit, 1–2 a letter, then trace ids offset by 3).
#[allow(clippy::too_many_arguments)]
fn row_id(
    interner: &mut Interner,
    word: &[u8],
    roles: &[u8],
    z_var: Option<u8>,
    letters: &[(u8, u8)],
    target_code: u128,
    target: impl FnOnce() -> RowTarget,
    counts: &mut [[u8; 3]],
) -> u32 {
    counts.iter_mut().for_each(|c| *c = [0; 3]);
    for (o, &r) in roles.iter().enumerate() {
        if r == 1 {
            counts[word[o] as usize][0] += 1;
        }
    }
    for &(o, l) in letters {
        counts[word[o as usize] as usize][1 + l as usize] += 1;
    }
    let mut code = target_code * (interner.base.len() as u128 + 1) + z_var.map_or(0, |v| v as u128 + 1);
    for (c, &d) in counts.iter().zip(&interner.base) {
        code = ((code * d + c[0] as u128) * d + c[1] as u128) * d + c[2] as u128;
    }
    let counts = &*counts;
    interner.id(
        || RowKey {
            z_var,
            counts: counts.to_vec(),
            target: target(),
        },
        code,
    )
}
