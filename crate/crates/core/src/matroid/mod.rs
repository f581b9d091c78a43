//! Matroids given by their basis family.
//!
//! Element sets are `u64` bitmasks, so the ground set holds at most 64
//! elements. Bases are kept sorted; circuits and flats are computed on
//! first use and cached.

mod canonical;
mod construct;
mod minors;
mod recognize;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bits::{elements_of, full_mask, k_subsets, ones64, submasks};
use crate::complex::{Face, SimplicialComplex};

pub use canonical::CanonicalForm;
pub use construct::GraphInput;
pub use recognize::{recognize_matroid_complex, NotMatroidWitness};

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("ground set of size {0} exceeds the {MAX_ELEMENTS}-element limit")]
    TooManyElements(usize),
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("bases {first:?} and {other:?} have different sizes")]
    NotEquicardinal { first: Vec<usize>, other: Vec<usize> },
    #[error("exchange fails: removing {element} from {b1:?} admits no replacement from {b2:?}")]
    ExchangeFailure { b1: Vec<usize>, b2: Vec<usize>, element: usize },
    #[error("cannot delete the entire ground set")]
    DeleteAll,
    #[error("{0:?} is not independent")]
    Dependent(Vec<usize>),
    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("circuit list {0:?} does not determine a matroid with the stated rank")]
    InconsistentCircuits(Vec<Vec<usize>>),
}

#[derive(Default, Clone)]
struct Derived {
    circuits: OnceLock<Vec<u64>>,
    flats: OnceLock<Vec<u64>>,
    canonical: OnceLock<(CanonicalForm, Vec<usize>)>,
}

/// A matroid on `{0..n}` represented by its bases.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
    derived: Derived,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, rank={}, bases=[", self.n, self.rank)?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", Face::from_bits(*b as u128))?;
        }
        write!(f, "])")
    }
}

impl Matroid {
    /// Validate a basis family: nonempty, equicardinal, and closed under exchange.
    pub fn from_bases<I: IntoIterator<Item = u64>>(n: usize, bases: I) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let mut bases: Vec<u64> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let first = *bases.first().ok_or(MatroidError::EmptyBasisFamily)?;
        let ground = full_mask(n);
        for &b in &bases {
            if b & !ground != 0 {
                let element = 63 - (b & !ground).leading_zeros() as usize;
                return Err(MatroidError::ElementOutOfRange { element, n });
            }
            if b.count_ones() != first.count_ones() {
                return Err(MatroidError::NotEquicardinal {
                    first: elements_of(first),
                    other: elements_of(b),
                });
            }
        }
        let m = Matroid::from_sorted_bases(n, bases);
        m.check_exchange()?;
        Ok(m)
    }

    /// Build from a family already known to satisfy the basis axioms.
    pub(crate) fn from_bases_unchecked(n: usize, mut bases: Vec<u64>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        let m = Matroid::from_sorted_bases(n, bases);
        debug_assert!(m.check_exchange().is_ok(), "internal construction broke exchange: {m:?}");
        m
    }

    fn from_sorted_bases(n: usize, bases: Vec<u64>) -> Matroid {
        let rank = bases[0].count_ones() as usize;
        Matroid { n, rank, bases, derived: Derived::default() }
    }

    fn check_exchange(&self) -> Result<(), MatroidError> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in ones64(b1 & !b2) {
                    let base = b1 & !(1u64 << x);
                    if !ones64(b2 & !b1).any(|y| self.is_basis(base | 1u64 << y)) {
                        return Err(MatroidError::ExchangeFailure {
                            b1: elements_of(b1),
                            b2: elements_of(b2),
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matroid whose independent sets are the sets containing no listed circuit.
    pub fn from_circuits(n: usize, rank: usize, circuits: &[u64]) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        if rank > n {
            return Err(MatroidError::InvalidParameters(format!("rank {rank} exceeds ground set size {n}")));
        }
        let bases: Vec<u64> = k_subsets(n, rank)
            .filter(|&s| circuits.iter().all(|&c| c & !s != 0))
            .collect();
        let inconsistent = || MatroidError::InconsistentCircuits(circuits.iter().map(|&c| elements_of(c)).collect());
        let m = Matroid::from_bases(n, bases).map_err(|_| inconsistent())?;
        let mut given: Vec<u64> = circuits.to_vec();
        given.sort_unstable();
        given.dedup();
        let mut derived = m.circuits().to_vec();
        derived.sort_unstable();
        if given != derived {
            return Err(inconsistent());
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> u64 {
        full_mask(self.n)
    }

    /// Bases as sorted bitmasks.
    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    pub fn is_basis(&self, set: u64) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    /// `max_B |B ∩ A|`.
    pub fn rank_of(&self, a: u64) -> usize {
        self.bases.iter().map(|b| (b & a).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_independent(&self, set: u64) -> bool {
        self.bases.iter().any(|b| set & !b == 0)
    }

    /// All independent sets, sorted.
    pub fn independent_sets(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self
            .bases
            .iter()
            .flat_map(|&b| submasks(b as u128).map(|s| s as u64))
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_generators_unchecked(
            self.n,
            self.bases.iter().map(|&b| Face::from_bits(b as u128)).collect(),
        )
    }

    /// Minimal dependent sets, sorted by bitmask.
    pub fn circuits(&self) -> &[u64] {
        self.derived.circuits.get_or_init(|| {
            let mut out = Vec::new();
            for size in 1..=(self.rank + 1).min(self.n) {
                for c in k_subsets(self.n, size) {
                    if !self.is_independent(c) && ones64(c).all(|x| self.is_independent(c & !(1u64 << x))) {
                        out.push(c);
                    }
                }
            }
            out.sort_unstable();
            out
        })
    }

    /// `A ∪ {x : r(A ∪ x) = r(A)}`.
    pub fn closure(&self, a: u64) -> u64 {
        let r = self.rank_of(a);
        (0..self.n)
            .filter(|&x| a >> x & 1 == 1 || self.rank_of(a | 1u64 << x) == r)
            .fold(0u64, |m, x| m | 1u64 << x)
    }

    /// All flats, sorted by rank then bitmask.
    pub fn flats(&self) -> &[u64] {
        self.derived.flats.get_or_init(|| {
            let mut flats: Vec<u64> = self.independent_sets().into_iter().map(|i| self.closure(i)).collect();
            flats.sort_unstable();
            flats.dedup();
            flats.sort_by_key(|&f| (self.rank_of(f), f));
            flats
        })
    }

    pub fn flats_of_rank(&self, r: usize) -> Vec<u64> {
        self.flats().iter().copied().filter(|&f| self.rank_of(f) == r).collect()
    }

    pub fn loops(&self) -> u64 {
        let union = self.bases.iter().fold(0u64, |a, b| a | b);
        self.ground() & !union
    }

    pub fn coloops(&self) -> u64 {
        self.bases.iter().fold(self.ground(), |a, b| a & b)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops() == 0
    }

    pub fn is_coloop_free(&self) -> bool {
        self.coloops() == 0
    }

    /// Parallel classes of the non-loop elements, each as a mask.
    pub fn parallel_classes(&self) -> Vec<u64> {
        let loops = self.loops();
        let mut assigned = loops;
        let mut classes = Vec::new();
        for x in 0..self.n {
            if assigned >> x & 1 == 1 {
                continue;
            }
            let class = (x..self.n)
                .filter(|&y| loops >> y & 1 == 0 && (y == x || self.rank_of(1u64 << x | 1u64 << y) == 1))
                .fold(0u64, |m, y| m | 1u64 << y);
            assigned |= class;
            classes.push(class);
        }
        classes
    }

    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.parallel_classes().iter().all(|c| c.count_ones() == 1)
    }

    /// Blocks of the finest direct-sum decomposition.
    ///
    /// Two elements share a block when one can be exchanged for the other in
    /// some basis; the blocks are the classes of the transitive closure.
    pub fn components(&self) -> Vec<u64> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &b in &self.bases {
            for x in ones64(b) {
                for y in ones64(self.ground() & !b) {
                    if self.is_basis((b & !(1u64 << x)) | 1u64 << y) {
                        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                        parent[rx] = ry;
                    }
                }
            }
        }
        let mut blocks: Vec<u64> = Vec::new();
        let mut root_block: Vec<Option<usize>> = vec![None; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            match root_block[r] {
                Some(i) => blocks[i] |= 1u64 << x,
                None => {
                    root_block[r] = Some(blocks.len());
                    blocks.push(1u64 << x);
                }
            }
        }
        blocks
    }

    /// One block and at least two elements, or a single non-loop element.
    pub fn is_connected(&self) -> bool {
        match self.n {
            0 => false,
            1 => self.is_loopless(),
            _ => self.components().len() == 1,
        }
    }

    /// Image under the relabelling `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        let bases = self
            .bases
            .iter()
            .map(|&b| ones64(b).fold(0u64, |m, x| m | 1u64 << perm[x]))
            .collect();
        Matroid::from_bases_unchecked(self.n, bases)
    }

    /// Exhaustively check R1-R3 on the derived rank function (small ground sets only).
    pub fn check_rank_axioms(&self) -> Result<(), String> {
        if self.n > 12 {
            return Err(format!("exhaustive rank check limited to 12 elements, got {}", self.n));
        }
        let size = 1usize << self.n;
        let r: Vec<usize> = (0..size as u64).map(|a| self.rank_of(a)).collect();
        for a in 0..size {
            if r[a] > (a as u64).count_ones() as usize {
                return Err(format!("R1 fails at {:?}", elements_of(a as u64)));
            }
            for b in 0..size {
                if b & !a == 0 && r[b] > r[a] {
                    return Err(format!("R2 fails at {:?} ⊆ {:?}", elements_of(b as u64), elements_of(a as u64)));
                }
                if r[a & b] + r[a | b] > r[a] + r[b] {
                    return Err(format!("R3 fails at {:?}, {:?}", elements_of(a as u64), elements_of(b as u64)));
                }
            }
        }
        Ok(())
    }
}
