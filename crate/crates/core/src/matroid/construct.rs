use crate::bits::{k_subsets, ones64};

use super::{Matroid, MatroidError, MAX_ELEMENTS};

/// A multigraph; self-loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInput {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, MatroidError> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(MatroidError::InvalidParameters(format!(
                    "edge ({u},{v}) has an endpoint outside {vertices} vertices"
                )));
            }
        }
        Ok(GraphInput { vertices, edges })
    }

    /// The cycle on `len` vertices.
    pub fn cycle(len: usize) -> Self {
        GraphInput { vertices: len, edges: (0..len).map(|i| (i, (i + 1) % len)).collect() }
    }

    fn is_forest(&self, edges: u64) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in ones64(edges) {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }
}

impl Matroid {
    /// `U_{d,n}`: every `d`-subset is a basis.
    pub fn uniform(d: usize, n: usize) -> Result<Matroid, MatroidError> {
        if d > n || n > MAX_ELEMENTS {
            return Err(MatroidError::InvalidParameters(format!("uniform({d}, {n})")));
        }
        if n > 63 {
            return Err(MatroidError::TooManyElements(n));
        }
        Ok(Matroid::from_bases_unchecked(n, k_subsets(n, d).collect()))
    }

    /// Free matroid: the whole ground set is the only basis.
    pub fn free(n: usize) -> Matroid {
        Matroid::from_bases_unchecked(n, vec![crate::bits::full_mask(n)])
    }

    /// Cycle matroid of a multigraph; bases are the maximal spanning forests.
    pub fn graphic(g: &GraphInput) -> Result<Matroid, MatroidError> {
        let m = g.edges.len();
        if m > 63 {
            return Err(MatroidError::TooManyElements(m));
        }
        let all = crate::bits::full_mask(m);
        // rank = |V| - #components, obtained greedily
        let mut forest = 0u64;
        for e in 0..m {
            if g.is_forest(forest | 1u64 << e) {
                forest |= 1u64 << e;
            }
        }
        let r = forest.count_ones() as usize;
        let bases: Vec<u64> = k_subsets(m, r).filter(|&s| s & !all == 0 && g.is_forest(s)).collect();
        Ok(Matroid::from_bases_unchecked(m, bases))
    }

    /// `U_{1,2}^{⊕(d-1)} ⊕ U_{1,k+1}`: `d - 1` parallel pairs followed by one
    /// parallel class of size `k + 1`, so `2d + k - 1` elements of rank `d`.
    pub fn vdk(d: usize, k: usize) -> Result<Matroid, MatroidError> {
        if d == 0 || k == 0 {
            return Err(MatroidError::InvalidParameters(format!("vdk({d}, {k}) needs d, k >= 1")));
        }
        let pair = Matroid::uniform(1, 2)?;
        let mut m = Matroid::free(0);
        for _ in 1..d {
            m = m.direct_sum(&pair)?;
        }
        m.direct_sum(&Matroid::uniform(1, k + 1)?)
    }

    /// `self ⊕ other`, with `other`'s elements shifted past `self`'s.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << self.n);
            }
        }
        Ok(Matroid::from_bases_unchecked(n, bases))
    }

    /// Add a new element `n` parallel to `e`.
    pub fn add_parallel(&self, e: usize) -> Result<Matroid, MatroidError> {
        if e >= self.n {
            return Err(MatroidError::ElementOutOfRange { element: e, n: self.n });
        }
        if self.n + 1 > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(self.n + 1));
        }
        let fresh = 1u64 << self.n;
        let mut bases = self.bases.clone();
        for &b in &self.bases {
            if b >> e & 1 == 1 {
                bases.push((b & !(1u64 << e)) | fresh);
            }
        }
        Ok(Matroid::from_bases_unchecked(self.n + 1, bases))
    }

    /// Add a new element `n` as a coloop.
    pub fn add_coloop(&self) -> Result<Matroid, MatroidError> {
        self.direct_sum(&Matroid::free(1))
    }
}
