use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::groundring::{rat, HalfInt, LaurentSeries2};

/// Dimensions indexed by (Hochschild degree, topological degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedTable {
    entries: BTreeMap<(usize, i64), usize>,
    cutoff: i64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    entries: Vec<EntryJson>,
    cutoff: i64,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    h: usize,
    p: i64,
    dim: usize,
}

impl BigradedTable {
    /// Zero dimensions and entries above the cutoff are dropped.
    pub fn new(entries: BTreeMap<(usize, i64), usize>, cutoff: i64) -> Self {
        let entries = entries
            .into_iter()
            .filter(|&((_, d), m)| m > 0 && d <= cutoff)
            .collect();
        BigradedTable { entries, cutoff }
    }

    pub fn empty(cutoff: i64) -> Self {
        BigradedTable {
            entries: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, h: usize, p: i64) -> usize {
        self.entries.get(&(h, p)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(h, p), &m)| (h, p, m))
    }

    /// `(h, p) -> (h, p - 2h)`.
    ///
    /// The cutoff stays attached to the original degree, so a regraded table
    /// carries the untouched cutoff value.
    pub fn regrade(&self) -> Self {
        BigradedTable {
            entries: self
                .entries
                .iter()
                .map(|(&(h, p), &m)| ((h, p - 2 * h as i64), m))
                .collect(),
            cutoff: self.cutoff,
        }
    }

    /// Inverse of [`regrade`](Self::regrade).
    pub fn unregrade(&self) -> Self {
        BigradedTable {
            entries: self
                .entries
                .iter()
                .map(|(&(h, p), &m)| ((h, p + 2 * h as i64), m))
                .collect(),
            cutoff: self.cutoff,
        }
    }

    /// `Σ a^h q^{p/2} dim`, exact through q-degree `cutoff / 2`.
    pub fn series(&self) -> LaurentSeries2 {
        let mut s = LaurentSeries2::zero_through(HalfInt::from_twice(self.cutoff));
        for (&(h, p), &m) in &self.entries {
            s.add_term(
                HalfInt::from_int(h as i64),
                HalfInt::from_twice(p),
                rat(m as i64),
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TableJson {
            entries: self
                .entries()
                .map(|(h, p, dim)| EntryJson { h, p, dim })
                .collect(),
            cutoff: self.cutoff,
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        let doc: TableJson = serde_json::from_value(v.clone())?;
        Ok(Self::new(
            doc.entries
                .into_iter()
                .map(|e| ((e.h, e.p), e.dim))
                .collect(),
            doc.cutoff,
        ))
    }
}

/// The series divided by the monomial of its lowest term, together with that
/// monomial as `(a, q)` exponents.
pub fn normalize_series(s: &LaurentSeries2) -> (LaurentSeries2, (HalfInt, HalfInt)) {
    match s.lowest_term() {
        None => (s.clone(), (HalfInt::ZERO, HalfInt::ZERO)),
        Some((a, q, _)) => (s.shift(-a, -q), (a, q)),
    }
}

/// Series of a table, optionally normalized so the lowest term has
/// exponent zero.
pub fn series_from_table(t: &BigradedTable, normalize: bool) -> LaurentSeries2 {
    let s = t.series();
    if normalize {
        normalize_series(&s).0
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub free: bool,
    /// `(1 - q)^n` times the series, kept through `cutoff - n`.
    pub fiber: LaurentSeries2,
}

/// Tests whether a truncated Hilbert series looks like `fiber / (1 - q)^n`
/// for a polynomial `fiber` with nonnegative coefficients.
///
/// Without a cutoff the series is taken as exact and `free` only asks for
/// nonnegativity. With cutoff `c`, the product must vanish on `(c - n, c]`.
pub fn freeness_check(s: &LaurentSeries2, n: u32) -> FreenessReport {
    let mut one_minus_q = LaurentSeries2::one();
    one_minus_q.add_term(HalfInt::ZERO, HalfInt::from_int(1), rat(-1));
    let product = s.mul(&one_minus_q.pow(n));
    match s.cutoff() {
        None => FreenessReport {
            free: product.is_nonnegative(),
            fiber: product,
        },
        Some(c) => {
            let bound = c - HalfInt::from_int(n as i64);
            let fiber = product.truncated(bound).into_exact();
            let tail_vanishes = product.terms().all(|(_, q, _)| q <= bound);
            FreenessReport {
                free: tail_vanishes && fiber.is_nonnegative(),
                fiber,
            }
        }
    }
}
