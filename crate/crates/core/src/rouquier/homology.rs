use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::complex::{crossing_complex, tensor_complexes, BimoduleComplex};
use super::eliminate::gaussian_eliminate;
use super::RouquierError;
use crate::groundring::{rat, HalfInt, LaurentSeries2};
use crate::koszul::{induced_maps, KoszulComplex};
use crate::soergel::SoergelBimodule;

/// Dimensions indexed by `(a, q, t)`: Hochschild degree, half the
/// topological degree, and homological degree, after `shift` was applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplyGradedTable {
    entries: BTreeMap<(HalfInt, HalfInt, HalfInt), usize>,
    /// Entries are complete for q-exponents at most `cutoff`.
    cutoff: HalfInt,
    shift: (HalfInt, HalfInt, HalfInt),
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    entries: Vec<EntryJson>,
    shift: ShiftJson,
    cutoff: HalfInt,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    a: HalfInt,
    q: HalfInt,
    t: HalfInt,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct ShiftJson {
    a: HalfInt,
    q: HalfInt,
    t: HalfInt,
}

impl TriplyGradedTable {
    pub fn new(entries: BTreeMap<(HalfInt, HalfInt, HalfInt), usize>, cutoff: HalfInt) -> Self {
        let entries = entries
            .into_iter()
            .filter(|&((_, q, _), m)| m > 0 && q <= cutoff)
            .collect();
        let zero = HalfInt::ZERO;
        TriplyGradedTable {
            entries,
            cutoff,
            shift: (zero, zero, zero),
        }
    }

    pub fn cutoff(&self) -> HalfInt {
        self.cutoff
    }

    /// The monomial `a^α q^β t^γ` applied so far.
    pub fn shift(&self) -> (HalfInt, HalfInt, HalfInt) {
        self.shift
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: HalfInt, q: HalfInt, t: HalfInt) -> usize {
        self.entries.get(&(a, q, t)).copied().unwrap_or(0)
    }

    /// `(a, q, t, dim)` for every nonzero entry.
    pub fn entries(&self) -> impl Iterator<Item = (HalfInt, HalfInt, HalfInt, usize)> + '_ {
        self.entries.iter().map(|(&(a, q, t), &m)| (a, q, t, m))
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    /// Multiplies by `a^α q^β t^γ`; the cutoff moves with `q`.
    pub fn shifted(&self, a: HalfInt, q: HalfInt, t: HalfInt) -> Self {
        TriplyGradedTable {
            entries: self
                .entries
                .iter()
                .map(|(&(x, y, z), &m)| ((x + a, y + q, z + t), m))
                .collect(),
            cutoff: self.cutoff + q,
            shift: (self.shift.0 + a, self.shift.1 + q, self.shift.2 + t),
        }
    }

    /// Lowest entry in `(q, a, t)` order.
    pub fn lowest(&self) -> Option<(HalfInt, HalfInt, HalfInt)> {
        self.entries
            .keys()
            .map(|&(a, q, t)| (q, a, t))
            .min()
            .map(|(q, a, t)| (a, q, t))
    }

    /// Same entries up to the smaller of the two cutoffs.
    pub fn agrees_with(&self, other: &TriplyGradedTable) -> bool {
        let bound = self.cutoff.min(other.cutoff);
        let clip = |t: &TriplyGradedTable| -> Vec<_> {
            t.entries
                .iter()
                .filter(|((_, q, _), _)| *q <= bound)
                .map(|(k, v)| (*k, *v))
                .collect()
        };
        clip(self) == clip(other)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TableJson {
            entries: self
                .entries()
                .map(|(a, q, t, dim)| EntryJson { a, q, t, dim })
                .collect(),
            shift: ShiftJson {
                a: self.shift.0,
                q: self.shift.1,
                t: self.shift.2,
            },
            cutoff: self.cutoff,
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        let doc: TableJson = serde_json::from_value(v.clone())?;
        let entries = doc
            .entries
            .into_iter()
            .map(|e| ((e.a, e.q, e.t), e.dim))
            .collect();
        let mut table = Self::new(entries, doc.cutoff);
        table.shift = (doc.shift.a, doc.shift.q, doc.shift.t);
        Ok(table)
    }
}

/// `Σ (-1)^t a^i q^j dim`, reading `(-1)^t` as `(-1)^{⌊t⌋}` when `t` is
/// half-integral (closures with an even number of components).
pub fn euler_characteristic(t: &TriplyGradedTable) -> LaurentSeries2 {
    let mut s = LaurentSeries2::zero_through(t.cutoff);
    for (a, q, h, m) in t.entries() {
        let sign = if h.floor().rem_euclid(2) == 0 { 1 } else { -1 };
        s.add_term(a, q, rat(sign * m as i64));
    }
    s
}

/// The complex of a braid word, simplified after every letter when `simplify`.
pub fn braid_complex(b: &BraidWord, simplify: bool) -> Result<BimoduleComplex, RouquierError> {
    let n = b.strands();
    let mut c = BimoduleComplex::single(SoergelBimodule::unit(n, 0)?, 0);
    for &l in b.letters() {
        let f = crossing_complex(l.unsigned_abs() as usize, l > 0, n)?;
        c = tensor_complexes(&c, &f)?;
        if simplify {
            c = gaussian_eliminate(&c);
        }
        log::debug!("after letter {l}: total rank {}", c.total_rank());
    }
    Ok(c)
}

/// Homology of `HH_i` applied to every term of the complex, through
/// q-degree `cutoff`, without any normalization shift.
pub fn kr_of_complex(
    c: &BimoduleComplex,
    cutoff: HalfInt,
) -> Result<TriplyGradedTable, RouquierError> {
    let top = cutoff.twice();
    let minimum = c.degrees().flat_map(|t| c.term(t).degrees().to_vec()).min();
    if let Some(m) = minimum {
        if m > top {
            return Err(RouquierError::CutoffTooSmall {
                cutoff,
                minimum: HalfInt::from_twice(m),
            });
        }
    }
    let degrees: Vec<i64> = c.degrees().collect();
    log::info!("homology of {} terms through q^{cutoff}", degrees.len());
    let complexes: Vec<KoszulComplex> = degrees
        .iter()
        .map(|&t| KoszulComplex::new(&c.term(t)))
        .collect::<Result<_, _>>()?;
    let homologies: Vec<_> = complexes.par_iter().map(|k| k.homology(top)).collect();
    let maps: Vec<_> = (0..degrees.len().saturating_sub(1))
        .into_par_iter()
        .map(|p| {
            induced_maps(
                &complexes[p],
                &homologies[p],
                &homologies[p + 1],
                &c.differential(degrees[p]),
                0,
            )
        })
        .collect();
    let mut entries = BTreeMap::new();
    for (p, &t) in degrees.iter().enumerate() {
        for ((i, d), h) in homologies[p].dims() {
            let out = if p < maps.len() {
                maps[p].get(&(i, d)).map_or(0, |m| m.rank())
            } else {
                0
            };
            let inc = if p > 0 {
                maps[p - 1].get(&(i, d)).map_or(0, |m| m.rank())
            } else {
                0
            };
            let dim = h - out - inc;
            if dim > 0 {
                entries.insert(
                    (
                        HalfInt::from_int(i as i64),
                        HalfInt::from_twice(d),
                        HalfInt::from_int(t),
                    ),
                    dim,
                );
            }
        }
    }
    Ok(TriplyGradedTable::new(entries, cutoff))
}

/// Unnormalized triply graded homology of the closure of `b`, exact through
/// q-degree `cutoff`.
pub fn kr_homology(b: &BraidWord, cutoff: HalfInt) -> Result<TriplyGradedTable, RouquierError> {
    kr_of_complex(&braid_complex(b, true)?, cutoff)
}
