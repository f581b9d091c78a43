//! Exhaustive small-matroid census and the sweeps built on it.
//!
//! Classes are generated level by level: every loopless matroid on `n`
//! elements is a single-element extension of one on `n - 1`, or a smaller
//! matroid plus a coloop. Classes are deduplicated by canonical form and
//! always returned sorted by it, so output does not depend on scheduling.

mod catalog;
mod generate;
mod pure_o;
mod scan;
mod suites;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::activity::OrderedMatroid;
use crate::complex::HVector;
use crate::lattice::GradedLattice;
use crate::matroid::{CanonicalForm, Matroid, MatroidError};

pub use catalog::{emit_catalog, parse_catalog, Catalog};
pub use pure_o::{pure_o_certificate, Monomial, PureOOutcome};
pub use scan::{bc_conjecture_scan, BcScanEntry, BcScanReport};
pub use suites::{is_flawless, is_log_concave, tdk, verify_suite, Suite, SuiteParams, SuiteReport};

/// Largest ground set the census enumerates unless configured otherwise.
pub const DEFAULT_MAX_N: usize = 8;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "MCX_CENSUS_MAX_N";

/// Seed for every sampled ground-set or atom order.
pub const ORDER_SEED: u64 = 0x005e_ed0f_02d3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("ground set size {n} is above the census cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("catalog line {line}: {message}")]
    Catalog { line: usize, message: String },
    #[error("cannot read {MAX_N_ENV}={0:?} as a ground set size")]
    BadEnvironment(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Memoized generator of loopless isomorphism classes.
pub struct Census {
    max_n: usize,
    levels: Mutex<HashMap<(usize, usize), Arc<Vec<Matroid>>>>,
}

impl Default for Census {
    fn default() -> Self {
        Census::new(DEFAULT_MAX_N)
    }
}

impl Census {
    pub fn new(max_n: usize) -> Self {
        Census { max_n, levels: Mutex::new(HashMap::new()) }
    }

    /// Use the cap from [`MAX_N_ENV`] when set.
    pub fn from_env() -> Result<Self, CensusError> {
        match std::env::var(MAX_N_ENV) {
            Ok(v) => v.trim().parse().map(Census::new).map_err(|_| CensusError::BadEnvironment(v)),
            Err(_) => Ok(Census::default()),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check_cap(&self, n: usize) -> Result<(), CensusError> {
        if n > self.max_n {
            Err(CensusError::CapExceeded { n, cap: self.max_n })
        } else {
            Ok(())
        }
    }

    /// One canonical representative of each loopless rank-`d` class on `n` elements.
    pub fn loopless(&self, n: usize, d: usize) -> Result<Arc<Vec<Matroid>>, CensusError> {
        self.check_cap(n)?;
        if d > n {
            return Ok(Arc::new(Vec::new()));
        }
        if let Some(level) = self.levels.lock().expect("census lock").get(&(n, d)) {
            return Ok(level.clone());
        }
        let empty = Arc::new(Vec::new());
        let same = if n > 0 { self.loopless(n - 1, d)? } else { empty.clone() };
        let lower = if n > 0 && d > 0 { self.loopless(n - 1, d - 1)? } else { empty };
        let level = Arc::new(generate::next_level(n, d, &same, &lower));
        self.levels.lock().expect("census lock").insert((n, d), level.clone());
        Ok(level)
    }

    /// Classes of rank `d` on `n` elements, with loops allowed unless `loopless`.
    pub fn enumerate(&self, n: usize, d: usize, loopless: bool) -> Result<Vec<Matroid>, CensusError> {
        if loopless {
            return Ok(self.loopless(n, d)?.to_vec());
        }
        self.check_cap(n)?;
        let mut out = Vec::new();
        for loops in 0..=n.saturating_sub(d) {
            for m in self.loopless(n - loops, d)?.iter() {
                out.push(with_loops(m, loops).canonical_matroid());
            }
        }
        out.sort_by(|a, b| a.canonical_form().cmp(b.canonical_form()));
        Ok(out)
    }

    /// Every loopless class with `1 <= n <= n_max`, by `n`, then rank, then canonical form.
    pub fn loopless_up_to(&self, n_max: usize) -> Result<Vec<Matroid>, CensusError> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for d in 0..=n {
                out.extend(self.loopless(n, d)?.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Loopless rank-`d` classes with `|χ̃(I(M))| = k`, filtered by family.
    pub fn psi(&self, q: &PsiQuery) -> Result<PsiResult, CensusError> {
        if q.d == 0 || q.k == 0 {
            return Err(CensusError::InvalidQuery(format!("need d >= 1 and k >= 1, got d={}, k={}", q.d, q.k)));
        }
        let bound = 2 * q.d + q.k - 1;
        let wanted = q.n_max.unwrap_or(bound);
        let scanned = wanted.min(self.max_n);
        let mut classes = Vec::new();
        for n in q.d..=scanned {
            for m in self.loopless(n, q.d)?.iter() {
                if m.independence_complex().h_vector().expect("pure").top() == q.k as i64 && q.family.admits(m) {
                    classes.push(m.clone());
                }
            }
        }
        let records = classes.par_iter().map(|m| CensusRecord::new(m, RECORD_ORDERS)).collect();
        Ok(PsiResult { query: q.clone(), bound, n_scanned: scanned, complete: scanned >= bound, records })
    }

    /// [`Census::psi`] restricted to simple matroids.
    pub fn sigma(&self, d: usize, k: usize, n_max: Option<usize>) -> Result<PsiResult, CensusError> {
        self.psi(&PsiQuery { d, k, family: Family::Simple, n_max })
    }
}

fn with_loops(m: &Matroid, loops: usize) -> Matroid {
    Matroid::from_bases_unchecked(m.n() + loops, m.bases().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    Simple,
    SimpleConnected,
}

impl Family {
    pub fn admits(self, m: &Matroid) -> bool {
        match self {
            Family::All => true,
            Family::Simple => m.is_simple(),
            Family::SimpleConnected => m.is_simple() && m.is_connected(),
        }
    }
}

impl FromStr for Family {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Family::All),
            "simple" => Ok(Family::Simple),
            "simple-connected" => Ok(Family::SimpleConnected),
            other => Err(CensusError::InvalidQuery(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::All => "all",
            Family::Simple => "simple",
            Family::SimpleConnected => "simple-connected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiQuery {
    pub d: usize,
    pub k: usize,
    pub family: Family,
    /// Defaults to `2d + k - 1`, past which no loopless class has `h_d = k`.
    pub n_max: Option<usize>,
}

impl PsiQuery {
    pub fn new(d: usize, k: usize) -> Self {
        PsiQuery { d, k, family: Family::All, n_max: None }
    }
}

#[derive(Debug, Clone)]
pub struct PsiResult {
    pub query: PsiQuery,
    /// `2d + k - 1`.
    pub bound: usize,
    pub n_scanned: usize,
    /// False when the scan stopped short of `bound`.
    pub complete: bool,
    pub records: Vec<CensusRecord>,
}

/// Number of sampled ground-set orders stored on each record.
const RECORD_ORDERS: usize = 5;

/// Order-independent invariants of one class, plus reduced broken-circuit
/// data under the natural order of the canonical representative and a few
/// sampled orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub form: CanonicalForm,
    pub n: usize,
    pub d: usize,
    pub basis_count: usize,
    pub h: HVector,
    /// `|χ̃(I(M))|`.
    pub independence_chi: u64,
    /// `|χ̃|` of the reduced broken-circuit complex under the natural order.
    pub reduced_bc_chi: Option<u64>,
    /// Smallest and largest `|χ̃|` of the reduced broken-circuit complex over sampled orders.
    pub reduced_bc_chi_range: Option<(u64, u64)>,
    pub orders_sampled: usize,
    /// `|μ|` of the lattice of flats.
    pub mobius_abs: Option<u64>,
    pub loopless: bool,
    pub simple: bool,
    pub connected: bool,
    pub coloop_free: bool,
}

impl CensusRecord {
    pub fn new(m: &Matroid, sampled: usize) -> Self {
        let m = m.canonical_matroid();
        let h = m.independence_complex().h_vector().expect("pure");
        let loopless = m.is_loopless();
        let reduced_chi = |om: &OrderedMatroid| -> u64 {
            om.reduced_bc_complex().expect("loopless").reduced_euler().expect("pure").unsigned_abs()
        };
        let (reduced_bc_chi, reduced_bc_chi_range, orders_sampled) = if loopless && m.rank() > 0 {
            let natural = reduced_chi(&OrderedMatroid::natural(m.clone()));
            let chis: Vec<u64> = sampled_orders(m.n(), sampled, ORDER_SEED)
                .into_iter()
                .map(|o| reduced_chi(&OrderedMatroid::new(m.clone(), o).expect("valid order")))
                .collect();
            let range = chis.iter().fold((natural, natural), |(lo, hi), &c| (lo.min(c), hi.max(c)));
            (Some(natural), Some(range), chis.len())
        } else {
            (None, None, 0)
        };
        let mobius_abs = GradedLattice::of_flats(&m).ok().map(|l| l.mobius().unsigned_abs());
        CensusRecord {
            form: m.canonical_form().clone(),
            n: m.n(),
            d: m.rank(),
            basis_count: m.basis_count(),
            independence_chi: h.top().unsigned_abs(),
            h,
            reduced_bc_chi,
            reduced_bc_chi_range,
            orders_sampled,
            mobius_abs,
            loopless,
            simple: m.is_simple(),
            connected: m.is_connected(),
            coloop_free: m.is_coloop_free(),
        }
    }

    pub fn matroid(&self) -> Matroid {
        self.form.to_matroid()
    }
}

/// Integer partitions of `d` with parts in decreasing order, listed in
/// reverse lexicographic order.
pub fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_orders(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    // standard next-permutation step
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { return out };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// `count` uniformly random permutations of `0..n` from a seeded generator.
pub fn sampled_orders(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

/// Every order when `n <= exhaustive_up_to`, otherwise `samples` seeded ones.
pub fn orders_to_try(n: usize, exhaustive_up_to: usize, samples: usize) -> Vec<Vec<usize>> {
    if n <= exhaustive_up_to {
        all_orders(n)
    } else {
        sampled_orders(n, samples, ORDER_SEED)
    }
}
