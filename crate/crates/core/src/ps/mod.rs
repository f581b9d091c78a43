//! PS-spheres (joins of simplex boundaries), PS-balls, ear attachment and
//! the extremal h-vector bounds.
//!
//! Realized shapes use a fixed labelling: the simplex boundaries of a
//! sphere occupy consecutive blocks of vertices in the order of
//! `parts`, and a ball puts its `ℓ + 1` apex vertices after the sphere.

mod search;

use std::fmt;

use thiserror::Error;

use crate::bits::{binomial_i, ones};
use crate::complex::{ComplexError, Face, HVector, SimplicialComplex};

pub use search::{find_ear_decomposition, Ear, EarDecomposition, EarSearchOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsError {
    #[error("sphere parts must be positive")]
    ZeroPart,
    #[error("ear has rank {ear} but the host has rank {host}")]
    DimensionMismatch { host: usize, ear: usize },
    #[error("embedding has {got} vertices, the ear needs {expected}")]
    EmbeddingLength { expected: usize, got: usize },
    #[error("embedding is not injective")]
    NonInjectiveEmbedding,
    #[error("interior vertex {0} of the ear is already a vertex of the host")]
    InteriorVertexNotFresh(usize),
    #[error("boundary face {0} of the ear is missing from the host")]
    BoundaryNotInHost(Face),
    #[error("face {0} of the ear lies in the host but not on the ear's boundary")]
    InteriorFaceInHost(Face),
    #[error("complex is not pure")]
    NotPure,
    #[error("construction needs {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `Γ̂_{d_1} * ... * Γ̂_{d_k}`; an empty part list is the sphere `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsSphereShape {
    parts: Vec<usize>,
}

impl PsSphereShape {
    pub fn new(parts: Vec<usize>) -> Result<Self, PsError> {
        if parts.contains(&0) {
            return Err(PsError::ZeroPart);
        }
        Ok(PsSphereShape { parts })
    }

    /// The cross-polytope boundary `Γ̂_1^d`.
    pub fn cross_polytope(d: usize) -> Self {
        PsSphereShape { parts: vec![1; d] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().map(|p| p + 1).sum()
    }
}

impl fmt::Display for PsSphereShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `Σ * Γ_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PsBallShape {
    pub sphere: PsSphereShape,
    pub ell: usize,
}

impl PsBallShape {
    pub fn new(sphere: PsSphereShape, ell: usize) -> Self {
        PsBallShape { sphere, ell }
    }

    pub fn rank(&self) -> usize {
        self.sphere.rank() + self.ell + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.sphere.vertex_count() + self.ell + 1
    }

    /// Realized vertices of the `Γ_ℓ` factor.
    pub fn apex(&self) -> Face {
        let s = self.sphere.vertex_count();
        Face::from_elements(s..s + self.ell + 1)
    }
}

impl fmt::Display for PsBallShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*G{}", self.sphere, self.ell)
    }
}

fn sphere_facets(shape: &PsSphereShape) -> Vec<Face> {
    let mut facets = vec![Face::EMPTY];
    let mut offset = 0;
    for &p in &shape.parts {
        let block = Face::from_elements(offset..offset + p + 1);
        let mut next = Vec::with_capacity(facets.len() * (p + 1));
        for f in &facets {
            for v in block.iter() {
                next.push(f.union(block.without(v)));
            }
        }
        facets = next;
        offset += p + 1;
    }
    facets
}

pub fn realize_sphere(shape: &PsSphereShape) -> SimplicialComplex {
    SimplicialComplex::new(shape.vertex_count(), sphere_facets(shape)).expect("sphere fits the vertex limit")
}

pub fn realize_ball(shape: &PsBallShape) -> SimplicialComplex {
    let apex = shape.apex();
    let facets = sphere_facets(&shape.sphere).into_iter().map(|f| f.union(apex));
    SimplicialComplex::new(shape.vertex_count(), facets).expect("ball fits the vertex limit")
}

/// `Σ * Γ̂_ℓ`.
pub fn realize_ball_boundary(shape: &PsBallShape) -> SimplicialComplex {
    let apex = shape.apex();
    let facets: Vec<Face> = sphere_facets(&shape.sphere)
        .into_iter()
        .flat_map(|f| apex.iter().map(move |w| f.union(apex.without(w))))
        .collect();
    SimplicialComplex::new(shape.vertex_count(), facets).expect("ball fits the vertex limit")
}

/// `Π_i (1 + t + ... + t^{d_i})`.
pub fn ps_sphere_h(shape: &PsSphereShape) -> HVector {
    shape
        .parts
        .iter()
        .fold(HVector::new(vec![1]), |acc, &p| acc.mul(&HVector::new(vec![1; p + 1])))
}

/// Largest possible `h_i` of a rank-`d` independence complex with `h_d = k`.
pub fn hbound(d: usize, k: usize, i: usize) -> i64 {
    let (d, k, i) = (d as i64, k as i64, i as i64);
    binomial_i(d, i) + (k - 1) * binomial_i(d - 1, i - 1)
}

/// Largest possible `f_i` (faces of dimension `i`, `i >= -1`) under the same constraints.
pub fn fbound(d: usize, k: usize, i: isize) -> i64 {
    let (d, k, i) = (d as i64, k as i64, i as i64);
    let pow = |e: i64| if e < 0 { 0 } else { 1i64 << e };
    binomial_i(d, i + 1) * pow(i + 1) + (k - 1) * binomial_i(d - 1, i) * pow(i)
}

/// Decide whether `c` is a PS-sphere.
///
/// Returns the shape (parts in decreasing order) and the map from realized
/// vertex labels to vertices of `c`. Two vertices lie in the same simplex
/// boundary exactly when no facet misses both of them.
pub fn recognize_ps_sphere(c: &SimplicialComplex) -> Option<(PsSphereShape, Vec<usize>)> {
    if c.is_void() {
        return None;
    }
    let facets = c.facets();
    let verts = c.vertex_set();
    let mut groups: Vec<Face> = Vec::new();
    let mut seen = Face::EMPTY;
    for u in verts.iter() {
        if seen.contains(u) {
            continue;
        }
        let mut apart = Face::EMPTY;
        for f in facets {
            if !f.contains(u) {
                apart = apart.union(verts.difference(*f));
            }
        }
        let group = verts.difference(apart).with(u);
        if group.len() < 2 || !group.intersection(seen).is_empty() {
            return None;
        }
        seen = seen.union(group);
        groups.push(group);
    }
    let mut expected: u128 = 1;
    for g in &groups {
        expected = expected.checked_mul(g.len() as u128)?;
    }
    if expected != facets.len() as u128 {
        return None;
    }
    for f in facets {
        let missing = verts.difference(*f);
        if groups.iter().any(|g| g.intersection(missing).len() != 1) {
            return None;
        }
    }
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let parts = groups.iter().map(|g| g.len() - 1).collect();
    let embedding = groups.iter().flat_map(|g| ones(g.bits())).collect();
    Some((PsSphereShape { parts }, embedding))
}

/// Attach the ball `shape` to `host`, mapping realized vertex `i` to `embedding[i]`.
///
/// Checks that the ranks agree and that `host ∩ K = ∂K`. Any face of `K`
/// off the boundary contains the whole apex, so it is enough to check that
/// the boundary facets lie in the host and the apex does not. For `ℓ = 0`
/// the apex is interior and must be a new vertex.
pub fn attach_ear(host: &SimplicialComplex, shape: &PsBallShape, embedding: &[usize]) -> Result<SimplicialComplex, PsError> {
    if host.is_void() {
        return Err(ComplexError::Void.into());
    }
    if !host.is_pure() {
        return Err(PsError::NotPure);
    }
    if host.rank() != shape.rank() {
        return Err(PsError::DimensionMismatch { host: host.rank(), ear: shape.rank() });
    }
    if embedding.len() != shape.vertex_count() {
        return Err(PsError::EmbeddingLength { expected: shape.vertex_count(), got: embedding.len() });
    }
    let mut sorted = embedding.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PsError::NonInjectiveEmbedding);
    }
    let n = host.n().max(sorted.last().map_or(0, |m| m + 1));
    let ball = realize_ball(shape).relabel(embedding, n)?;
    let boundary = realize_ball_boundary(shape).relabel(embedding, n)?;
    let apex = Face::from_elements(shape.apex().iter().map(|v| embedding[v]));
    if shape.ell == 0 {
        let w = apex.iter().next().expect("apex has one vertex");
        if host.vertex_set().contains(w) {
            return Err(PsError::InteriorVertexNotFresh(w));
        }
    }
    if let Some(f) = boundary.facets().iter().find(|f| !host.contains(**f)) {
        return Err(PsError::BoundaryNotInHost(*f));
    }
    if host.contains(apex) {
        return Err(PsError::InteriorFaceInHost(apex));
    }
    let widened = SimplicialComplex::new(n, host.facets().iter().copied())?;
    Ok(widened.union(&ball))
}

/// `Γ̂_{d-1} * Γ̂_1` with the ear `Γ̂_{d-2} * Γ_1` glued along `d - 1`
/// vertices of the first factor and the two vertices of the second.
///
/// For `d >= 3` this is the independence complex of a simple rank-`d`
/// matroid with `h_d = 2`.
pub fn simple_top_h_two_complex(d: usize) -> Result<SimplicialComplex, PsError> {
    if d < 3 {
        return Err(PsError::InvalidParameters(format!("rank at least 3, got {d}")));
    }
    let host = realize_sphere(&PsSphereShape::new(vec![d - 1, 1])?);
    let ear = PsBallShape::new(PsSphereShape::new(vec![d - 2])?, 1);
    // Σ onto vertices 0..d-1 of Γ̂_{d-1}; Γ_1 onto the Γ̂_1 pair d, d+1.
    let embedding: Vec<usize> = (0..d - 1).chain([d, d + 1]).collect();
    attach_ear(&host, &ear, &embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::recognize_matroid_complex;

    fn h(c: &SimplicialComplex) -> Vec<i64> {
        c.h_vector().unwrap().into_vec()
    }

    #[test]
    fn cross_polytope_facets() {
        let c = realize_sphere(&PsSphereShape::cross_polytope(4));
        assert_eq!(c.facets().len(), 16);
        assert_eq!(h(&c), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn simplex_boundary_shape() {
        for d in 1..6 {
            let s = PsSphereShape::new(vec![d]).unwrap();
            assert_eq!(h(&realize_sphere(&s)), vec![1; d + 1]);
            assert_eq!(ps_sphere_h(&s).into_vec(), vec![1; d + 1]);
        }
    }

    #[test]
    fn sphere_h_products() {
        assert_eq!(ps_sphere_h(&PsSphereShape::new(vec![1, 1, 1]).unwrap()).into_vec(), vec![1, 3, 3, 1]);
        assert_eq!(ps_sphere_h(&PsSphereShape::new(vec![2, 1]).unwrap()).into_vec(), vec![1, 2, 2, 1]);
        assert_eq!(ps_sphere_h(&PsSphereShape::new(vec![]).unwrap()).into_vec(), vec![1]);
        assert_eq!(PsSphereShape::new(vec![1, 0]), Err(PsError::ZeroPart));
    }

    #[test]
    fn smallest_ball_is_a_path() {
        let b = realize_ball(&PsBallShape::new(PsSphereShape::new(vec![1]).unwrap(), 0));
        assert_eq!(b.n(), 3);
        assert_eq!(b.facets(), &[Face::from_elements([0, 2]), Face::from_elements([1, 2])]);
        let bd = realize_ball_boundary(&PsBallShape::new(PsSphereShape::new(vec![1]).unwrap(), 0));
        assert_eq!(bd.facets().len(), 2);
        assert_eq!(bd.rank(), 1);
    }

    #[test]
    fn bounds() {
        assert_eq!(hbound(2, 2, 1), 3);
        assert_eq!((0..=4).map(|i| hbound(4, 1, i)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
        for d in 1..6 {
            for k in 1..5 {
                assert_eq!(hbound(d, k, 0), 1);
                assert_eq!(fbound(d, k, -1), 1);
                assert_eq!(fbound(d, k, 0), 2 * d as i64 + k as i64 - 1);
            }
        }
    }

    #[test]
    fn recognizes_spheres() {
        for parts in [vec![1, 1, 1], vec![3, 1], vec![2, 2], vec![], vec![4]] {
            let s = PsSphereShape::new(parts.clone()).unwrap();
            let c = realize_sphere(&s);
            let (shape, emb) = recognize_ps_sphere(&c).unwrap();
            let mut sorted = parts.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            assert_eq!(shape.parts(), sorted.as_slice());
            assert_eq!(realize_sphere(&shape).relabel(&emb, c.n()).unwrap(), c);
        }
        assert!(recognize_ps_sphere(&SimplicialComplex::simplex(3)).is_none());
        let path = SimplicialComplex::new(4, [Face::from_elements([0, 1]), Face::from_elements([1, 2]), Face::from_elements([2, 3])]).unwrap();
        assert!(recognize_ps_sphere(&path).is_none());
    }

    #[test]
    fn ear_on_square() {
        // 4-cycle 0-1-2-3 with a new apex 4 over the antipodal pair {1,3}
        let host = realize_sphere(&PsSphereShape::cross_polytope(2)).relabel(&[0, 2, 1, 3], 4).unwrap();
        let ear = PsBallShape::new(PsSphereShape::new(vec![1]).unwrap(), 0);
        let out = attach_ear(&host, &ear, &[1, 3, 4]).unwrap();
        assert_eq!(out.n(), 5);
        assert_eq!(h(&out), vec![1, 3, 2]);
        assert_eq!(out.reduced_euler().unwrap().abs(), 2);
    }

    #[test]
    fn ear_rejections() {
        let host = realize_sphere(&PsSphereShape::cross_polytope(2));
        let ear = PsBallShape::new(PsSphereShape::new(vec![1]).unwrap(), 0);
        // apex reuses a host vertex
        assert!(matches!(attach_ear(&host, &ear, &[0, 1, 2]), Err(PsError::InteriorVertexNotFresh(2))));
        // vertex 5 is not in the host
        assert!(matches!(attach_ear(&host, &ear, &[0, 5, 4]), Err(PsError::BoundaryNotInHost(_))));
        // the apex edge {0,2} is already in the host
        let edge = PsBallShape::new(PsSphereShape::new(vec![]).unwrap(), 1);
        assert!(matches!(attach_ear(&host, &edge, &[0, 2]), Err(PsError::InteriorFaceInHost(_))));
        let tri = PsBallShape::new(PsSphereShape::new(vec![1]).unwrap(), 1);
        assert!(matches!(attach_ear(&host, &tri, &[0, 1, 4, 5]), Err(PsError::DimensionMismatch { .. })));
        assert!(matches!(attach_ear(&host, &ear, &[0, 1]), Err(PsError::EmbeddingLength { .. })));
        assert!(matches!(attach_ear(&host, &ear, &[0, 0, 4]), Err(PsError::NonInjectiveEmbedding)));
    }

    #[test]
    fn top_h_two_construction() {
        for d in 3..7 {
            let c = simple_top_h_two_complex(d).unwrap();
            let m = recognize_matroid_complex(&c).unwrap();
            assert!(m.is_simple());
            assert_eq!(m.rank(), d);
            assert_eq!(c.h_vector().unwrap().top(), 2);
        }
        let c = simple_top_h_two_complex(3).unwrap();
        assert_eq!(h(&c), vec![1, 2, 3, 2]);
        assert!(simple_top_h_two_complex(2).is_err());
    }
}
