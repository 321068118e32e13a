//! Hochschild homology of bimodules through the Koszul resolution, computed
//! one topological degree at a time.

mod complex;
mod table;

use std::collections::BTreeMap;

pub use complex::{induced_maps, GradedSlice, HochschildHomology, HomologySpot, KoszulComplex};
pub use table::{
    freeness_check, normalize_series, series_from_table, BigradedTable, FreenessReport,
};

use crate::linalg::SparseMatrix;
use crate::soergel::{BimoduleMap, SoergelBimodule, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("invalid bimodule: {0}")]
    Invalid(Violation),
    #[error("variable counts differ: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
}

/// `dim HH_i(M)_d` for every topological degree `d <= cutoff`.
pub fn hochschild_dims(m: &SoergelBimodule, cutoff: i64) -> Result<BigradedTable, KoszulError> {
    let k = KoszulComplex::new(m)?;
    if m.degrees().iter().all(|&d| d > cutoff) {
        if m.rank() > 0 {
            log::warn!("cutoff {cutoff} is below every basis degree; table is empty");
        }
        return Ok(BigradedTable::empty(cutoff));
    }
    Ok(BigradedTable::new(k.homology_dims(cutoff), cutoff))
}

/// The map on Hochschild homology induced by `f`, one matrix per
/// `(i, source degree)` up to `cutoff`.
pub fn induced_map_on_hh(
    f: &BimoduleMap,
    cutoff: i64,
) -> Result<BTreeMap<(usize, i64), SparseMatrix>, KoszulError> {
    if f.source.nvars() != f.target.nvars() {
        return Err(KoszulError::VariableMismatch {
            left: f.source.nvars(),
            right: f.target.nvars(),
        });
    }
    let ks = KoszulComplex::new(&f.source)?;
    let kt = KoszulComplex::new(&f.target)?;
    let hs = ks.homology(cutoff);
    let ht = kt.homology(cutoff + f.degree);
    Ok(induced_maps(&ks, &hs, &ht, &f.matrix, f.degree))
}
