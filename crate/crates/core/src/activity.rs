//! Ordered matroids: broken circuits, nbc bases, internally passive sets
//! and the internal order on bases.

use thiserror::Error;

use crate::bits::{elements_of, ones64};
use crate::complex::{ComplexError, Face, HVector, SimplicialComplex};
use crate::matroid::Matroid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActivityError {
    #[error("element {0} is a loop; broken circuits need a loopless matroid")]
    Loop(usize),
    #[error("order is not a permutation of 0..{0}")]
    InvalidOrder(usize),
    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
    #[error("{0:?} is not independent")]
    Dependent(Vec<usize>),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A matroid with a total order on its ground set.
#[derive(Debug, Clone)]
pub struct OrderedMatroid {
    matroid: Matroid,
    /// Elements from smallest to largest.
    order: Vec<usize>,
    /// `position[x]` is the place of `x` in `order`.
    position: Vec<usize>,
}

impl OrderedMatroid {
    /// `order` lists the ground set from smallest to largest.
    pub fn new(matroid: Matroid, order: Vec<usize>) -> Result<Self, ActivityError> {
        let n = matroid.n();
        let mut position = vec![usize::MAX; n];
        if order.len() != n {
            return Err(ActivityError::InvalidOrder(n));
        }
        for (i, &x) in order.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(ActivityError::InvalidOrder(n));
            }
            position[x] = i;
        }
        Ok(OrderedMatroid { matroid, order, position })
    }

    pub fn natural(matroid: Matroid) -> Self {
        let n = matroid.n();
        OrderedMatroid { matroid, order: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    fn min_element(&self, set: u64) -> usize {
        ones64(set).min_by_key(|&x| self.position[x]).expect("nonempty set")
    }

    fn require_loopless(&self) -> Result<(), ActivityError> {
        match ones64(self.matroid.loops()).next() {
            Some(x) => Err(ActivityError::Loop(x)),
            None => Ok(()),
        }
    }

    /// Each circuit minus its smallest element, sorted and deduplicated.
    pub fn broken_circuits(&self) -> Result<Vec<u64>, ActivityError> {
        self.require_loopless()?;
        let mut out: Vec<u64> = self
            .matroid
            .circuits()
            .iter()
            .map(|&c| c & !(1u64 << self.min_element(c)))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Bases containing no broken circuit.
    pub fn nbc_bases(&self) -> Result<Vec<u64>, ActivityError> {
        let bcs = self.broken_circuits()?;
        Ok(self
            .matroid
            .bases()
            .iter()
            .copied()
            .filter(|&b| bcs.iter().all(|&c| c & !b != 0))
            .collect())
    }

    /// The complex of sets containing no broken circuit; its facets are the nbc bases.
    pub fn bc_complex(&self) -> Result<SimplicialComplex, ActivityError> {
        let facets = self.nbc_bases()?.into_iter().map(|b| Face::from_bits(b as u128));
        Ok(SimplicialComplex::new(self.matroid.n(), facets)?)
    }

    /// The broken-circuit complex with its cone points removed.
    pub fn reduced_bc_complex(&self) -> Result<SimplicialComplex, ActivityError> {
        Ok(self.bc_complex()?.remove_cone_points())
    }

    fn require_basis(&self, b: u64) -> Result<(), ActivityError> {
        if self.matroid.is_basis(b) {
            Ok(())
        } else {
            Err(ActivityError::NotABasis(elements_of(b)))
        }
    }

    /// `{b ∈ B : B - b + b' is a basis for some b' < b}`.
    pub fn internally_passive(&self, b: u64) -> Result<u64, ActivityError> {
        self.require_basis(b)?;
        Ok(self.passive_unchecked(b))
    }

    fn passive_unchecked(&self, b: u64) -> u64 {
        let mut ip = 0u64;
        for x in ones64(b) {
            let rest = b & !(1u64 << x);
            let replaceable = self.order[..self.position[x]]
                .iter()
                .any(|&y| b >> y & 1 == 0 && self.matroid.is_basis(rest | 1u64 << y));
            if replaceable {
                ip |= 1u64 << x;
            }
        }
        ip
    }

    pub fn int_poset(&self) -> IntPoset {
        let bases = self.matroid.bases().to_vec();
        let passive = bases.iter().map(|&b| self.passive_unchecked(b)).collect();
        IntPoset { rank: self.matroid.rank(), bases, passive }
    }

    /// Look for an nbc basis `B` and a basis `B'` with `IP(B') ⊆ IP(B)` where
    /// `B'` is not nbc. Returns the first such pair `(B, B')`.
    pub fn nbc_order_ideal_violation(&self) -> Result<Option<(u64, u64)>, ActivityError> {
        let nbc = self.nbc_bases()?;
        let poset = self.int_poset();
        for (i, &b) in poset.bases.iter().enumerate() {
            if nbc.binary_search(&b).is_err() {
                continue;
            }
            for (j, &b2) in poset.bases.iter().enumerate() {
                if poset.passive[j] & !poset.passive[i] == 0 && nbc.binary_search(&b2).is_err() {
                    return Ok(Some((b, b2)));
                }
            }
        }
        Ok(None)
    }

    /// Greedy completion of `set` to a basis, adding the smallest elements first.
    pub fn lexmin_basis_containing(&self, set: u64) -> Result<u64, ActivityError> {
        if !self.matroid.is_independent(set) {
            return Err(ActivityError::Dependent(elements_of(set)));
        }
        let mut b = set;
        for &x in &self.order {
            if b >> x & 1 == 0 && self.matroid.is_independent(b | 1u64 << x) {
                b |= 1u64 << x;
            }
        }
        Ok(b)
    }
}

/// Bases ordered by inclusion of their internally passive sets.
#[derive(Debug, Clone)]
pub struct IntPoset {
    rank: usize,
    pub bases: Vec<u64>,
    pub passive: Vec<u64>,
}

impl IntPoset {
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.passive[i] & !self.passive[j] == 0
    }

    /// Number of bases whose passive set has each size `0..=rank`.
    pub fn rank_counts(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.rank + 1];
        for p in &self.passive {
            counts[p.count_ones() as usize] += 1;
        }
        counts
    }

    /// Distinct bases have distinct passive sets, so the relation is a partial order.
    pub fn is_antisymmetric(&self) -> bool {
        let mut p = self.passive.clone();
        p.sort_unstable();
        p.windows(2).all(|w| w[0] != w[1])
    }

    /// With a maximum adjoined, every pair has a least upper bound and the
    /// poset has a least element. Returns a pair without a join otherwise.
    pub fn lattice_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let bottoms = (0..n).filter(|&i| (0..n).all(|j| self.leq(i, j))).count();
        if bottoms != 1 {
            return Some((0, 0));
        }
        for a in 0..n {
            for b in a + 1..n {
                let upper: Vec<usize> = (0..n).filter(|&u| self.leq(a, u) && self.leq(b, u)).collect();
                if upper.is_empty() {
                    continue;
                }
                let least = upper.iter().filter(|&&u| upper.iter().all(|&v| self.leq(u, v))).count();
                if least != 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Terms `x^{|I|} h(lk(I)|_B)` over independent `I` disjoint from a basis `B`.
#[derive(Debug, Clone)]
pub struct LinkDecomposition {
    pub terms: Vec<(u64, HVector)>,
    pub total: HVector,
    /// Number of bases of `M | (E - B)`.
    pub complement_bases: usize,
}

/// Split the h-polynomial of the independence complex along a basis `b`.
///
/// For `I` independent and disjoint from `b`, the faces `F ⊆ b` with
/// `F ∪ I` independent form a matroid complex of rank `d - |I|`; the
/// shifted h-polynomials of these complexes add up to `h(I(M))`.
pub fn link_decomposition(m: &Matroid, b: u64) -> Result<LinkDecomposition, ActivityError> {
    if !m.is_basis(b) {
        return Err(ActivityError::NotABasis(elements_of(b)));
    }
    let d = m.rank();
    let outside = m.ground() & !b;
    let mut total = vec![0i64; d + 1];
    let mut terms = Vec::new();
    for i in m.independent_sets() {
        if i & b != 0 {
            continue;
        }
        let facets = m
            .bases()
            .iter()
            .filter(|&&bb| i & !bb == 0 && bb & !(i | b) == 0)
            .map(|&bb| Face::from_bits((bb & !i) as u128));
        let link = SimplicialComplex::new(m.n(), facets)?;
        let h = link.h_vector()?;
        let shift = i.count_ones() as usize;
        for (j, &hj) in h.as_slice().iter().enumerate() {
            total[j + shift] += hj;
        }
        terms.push((i, h));
    }
    let complement_bases = m.restriction(outside).map(|r| r.basis_count()).unwrap_or(0);
    Ok(LinkDecomposition { terms, total: HVector::new(total), complement_bases })
}
