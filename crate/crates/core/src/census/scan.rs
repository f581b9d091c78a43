use rayon::prelude::*;

use crate::activity::OrderedMatroid;
use crate::matroid::CanonicalForm;

use super::{orders_to_try, Census, CensusError};

/// Orders are exhaustive up to this many elements and sampled above it.
const EXHAUSTIVE_ORDERS: usize = 6;
const SAMPLED_ORDERS: usize = 50;

/// A simple connected class whose reduced broken-circuit complex reached the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcScanEntry {
    pub form: CanonicalForm,
    pub orders_tried: usize,
    pub attaining_orders: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcScanReport {
    pub d: usize,
    pub k: i64,
    pub n_max: usize,
    /// `(n, classes scanned, classes attaining)`.
    pub per_n: Vec<(usize, usize, usize)>,
    pub entries: Vec<BcScanEntry>,
}

impl BcScanReport {
    /// Classes found; a lower bound only, since larger ground sets are never seen.
    pub fn found(&self) -> usize {
        self.entries.len()
    }
}

/// Simple connected rank-`d` classes with at most `n_max` elements whose
/// reduced broken-circuit complex has top h-entry `k` under some order tried.
pub fn bc_conjecture_scan(census: &Census, d: usize, k: i64, n_max: usize) -> Result<BcScanReport, CensusError> {
    if d == 0 {
        return Err(CensusError::InvalidQuery("rank must be positive".into()));
    }
    let mut per_n = Vec::new();
    let mut entries = Vec::new();
    for n in d..=n_max {
        let level = census.loopless(n, d)?;
        let candidates: Vec<_> = level.iter().filter(|m| m.is_simple() && m.is_connected()).collect();
        let orders = orders_to_try(n, EXHAUSTIVE_ORDERS, SAMPLED_ORDERS);
        let found: Vec<BcScanEntry> = candidates
            .par_iter()
            .filter_map(|m| {
                let attaining = orders
                    .iter()
                    .filter(|o| {
                        let om = OrderedMatroid::new((*m).clone(), o.to_vec()).expect("valid order");
                        let reduced = om.reduced_bc_complex().expect("loopless");
                        reduced.h_vector().expect("pure").top() == k
                    })
                    .count();
                (attaining > 0).then(|| BcScanEntry {
                    form: m.canonical_form().clone(),
                    orders_tried: orders.len(),
                    attaining_orders: attaining,
                })
            })
            .collect();
        per_n.push((n, candidates.len(), found.len()));
        entries.extend(found);
    }
    Ok(BcScanReport { d, k, n_max, per_n, entries })
}
