//! Simplicial complexes stored by their facets.
//!
//! Faces are bitmasks over a ground set of at most [`MAX_VERTICES`]
//! vertices, so subset tests are a couple of word operations. A complex
//! keeps only its facets (an inclusion antichain); every face count is
//! derived from them.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bits::{binomial_i, ones, submasks};

/// Largest ground set a complex can live on.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the void complex has no faces")]
    Void,
    #[error("ground set of size {0} exceeds the {MAX_VERTICES}-vertex limit")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is outside the ground set of size {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("h-vector {0:?} yields a negative face count")]
    NegativeFaceCount(Vec<i64>),
}

/// A face: a finite set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u128) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Build a face from vertex indices. Panics if an index is at least [`MAX_VERTICES`].
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Face(elements.into_iter().fold(0u128, |m, v| {
            assert!(v < MAX_VERTICES, "vertex {v} out of range");
            m | (1u128 << v)
        }))
    }

    pub fn singleton(v: usize) -> Self {
        Face::from_elements([v])
    }

    pub fn elements(self) -> Vec<usize> {
        ones(self.0).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        ones(self.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1u128 << v))
    }

    /// Largest vertex index plus one (zero for the empty face).
    pub fn span(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }

    /// All subsets of this face.
    pub fn subfaces(self) -> impl Iterator<Item = Face> {
        submasks(self.0).map(Face)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Face numbers `f_{-1}, f_0, ..., f_{d-1}`; index `j` holds `f_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector(counts)
    }

    /// Rank `d`: the largest face cardinality.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    /// `f_i` for `-1 <= i`, zero past the top dimension.
    pub fn f(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|j| self.0.get(j).copied())
            .unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// Number of vertices.
    pub fn vertices(&self) -> u64 {
        self.f(0)
    }

    /// Number of top-dimensional faces.
    pub fn top(&self) -> u64 {
        *self.0.last().unwrap_or(&0)
    }

    /// Expand `sum f_{i-1} t^i (1-t)^{d-i}`.
    pub fn to_h(&self) -> HVector {
        let d = self.rank() as i64;
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial_i(d - i, k - i) * self.0[i as usize] as i64
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }
}

/// Coefficients `h_0..h_d` of the h-polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector(Vec<i64>);

impl HVector {
    pub fn new(entries: Vec<i64>) -> Self {
        HVector(entries)
    }

    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn top(&self) -> i64 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Drop trailing zero entries (keeps at least `h_0`).
    pub fn trimmed(&self) -> HVector {
        let mut v = self.0.clone();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        HVector(v)
    }

    /// Polynomial product, the h-vector of a join.
    pub fn mul(&self, other: &HVector) -> HVector {
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HVector(out)
    }

    /// Inverse of [`FVector::to_h`]: `f_{k-1} = sum_i C(d-i, k-i) h_i`.
    pub fn to_f(&self) -> Result<FVector, ComplexError> {
        let d = self.rank() as i64;
        let f: Vec<i64> = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| binomial_i(d - i, k - i) * self.0[i as usize])
                    .sum()
            })
            .collect();
        if f.iter().any(|&x| x < 0) {
            return Err(ComplexError::NegativeFaceCount(self.0.clone()));
        }
        Ok(FVector(f.into_iter().map(|x| x as u64).collect()))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// A finite simplicial complex on the ground set `{0..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Build the complex generated by `generators`; non-maximal sets are discarded.
    pub fn new<I: IntoIterator<Item = Face>>(n: usize, generators: I) -> Result<Self, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        let gens: Vec<Face> = generators.into_iter().collect();
        for g in &gens {
            if g.span() > n {
                return Err(ComplexError::VertexOutOfRange { vertex: g.span() - 1, n });
            }
        }
        Ok(Self::from_generators_unchecked(n, gens))
    }

    pub(crate) fn from_generators_unchecked(n: usize, mut gens: Vec<Face>) -> Self {
        // Largest first, so a set is kept iff no earlier kept set contains it.
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        gens.dedup();
        let mut facets: Vec<Face> = Vec::with_capacity(gens.len());
        for g in gens {
            if !facets.iter().any(|f| g.is_subset(*f)) {
                facets.push(g);
            }
        }
        facets.sort();
        SimplicialComplex { n, facets }
    }

    /// The complex with no faces at all.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![Face::EMPTY] }
    }

    /// Full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        SimplicialComplex { n, facets: vec![Face(all)] }
    }

    /// Boundary of the simplex on `n >= 1` vertices: all proper subsets.
    pub fn simplex_boundary(n: usize) -> Self {
        assert!(n >= 1);
        let all = Face::from_elements(0..n);
        Self::from_generators_unchecked(n, (0..n).map(|v| all.without(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest face cardinality (`dim + 1`).
    pub fn rank(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        if self.is_void() {
            -2
        } else {
            self.rank() as isize - 1
        }
    }

    pub fn is_pure(&self) -> bool {
        let r = self.rank();
        self.facets.iter().all(|f| f.len() == r)
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Union of all faces.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |a, f| a.union(*f))
    }

    /// All faces, sorted by bitmask.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            seen.extend(f.subfaces());
        }
        let mut v: Vec<Face> = seen.into_iter().collect();
        v.sort();
        v
    }

    pub fn f_vector(&self) -> Result<FVector, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::Void);
        }
        let mut counts = vec![0u64; self.rank() + 1];
        for face in self.faces() {
            counts[face.len()] += 1;
        }
        Ok(FVector(counts))
    }

    /// h-vector with `d` equal to the rank of the complex. For non-pure
    /// complexes this is the same polynomial expansion.
    pub fn h_vector(&self) -> Result<HVector, ComplexError> {
        Ok(self.f_vector()?.to_h())
    }

    /// `sum_{i >= -1} (-1)^i f_i`.
    pub fn reduced_euler(&self) -> Result<i64, ComplexError> {
        let f = self.f_vector()?;
        Ok(f
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum())
    }

    /// Join with `other`, whose vertices are shifted by `self.n()`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(Face(a.0 | (b.0 << self.n)));
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets })
    }

    /// `{G : G ∩ face = ∅, G ∪ face ∈ Δ}`.
    pub fn link(&self, face: Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(face) {
            return Err(ComplexError::FaceNotInComplex(face));
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        Ok(Self::from_generators_unchecked(self.n, facets))
    }

    /// Facets containing `face`, as a subcomplex.
    pub fn star(&self, face: Face) -> SimplicialComplex {
        let facets: Vec<Face> = self.facets.iter().copied().filter(|f| face.is_subset(*f)).collect();
        SimplicialComplex { n: self.n, facets }
    }

    /// Induced subcomplex `Δ|_A`.
    pub fn restriction(&self, a: Face) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        Self::from_generators_unchecked(self.n, self.facets.iter().map(|f| f.intersection(a)).collect())
    }

    /// Vertices lying in every facet.
    pub fn cone_points(&self) -> Face {
        let mut iter = self.facets.iter();
        match iter.next() {
            None => Face::EMPTY,
            Some(first) => iter.fold(*first, |a, f| a.intersection(*f)),
        }
    }

    pub fn remove_cone_points(&self) -> SimplicialComplex {
        let cone = self.cone_points();
        SimplicialComplex {
            n: self.n,
            facets: {
                let mut v: Vec<Face> = self.facets.iter().map(|f| f.difference(cone)).collect();
                v.sort();
                v
            },
        }
    }

    /// Image under the vertex map `map` (which must be injective on used vertices).
    pub fn relabel(&self, map: &[usize], n: usize) -> Result<SimplicialComplex, ComplexError> {
        let facets = self
            .facets
            .iter()
            .map(|f| Face::from_elements(f.iter().map(|v| map[v])))
            .collect::<Vec<_>>();
        SimplicialComplex::new(n, facets)
    }

    /// Complex generated by the facets of both.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.n.max(other.n);
        Self::from_generators_unchecked(n, self.facets.iter().chain(&other.facets).copied().collect())
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets={:?})", self.n, self.facets)
    }
}
