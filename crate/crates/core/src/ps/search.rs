use std::collections::HashSet;

use crate::complex::{Face, SimplicialComplex};

use super::{attach_ear, realize_sphere, recognize_ps_sphere, PsBallShape, PsError, PsSphereShape};

/// One attached ball together with the host labels of its realized vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    pub ball: PsBallShape,
    pub embedding: Vec<usize>,
}

/// A starting PS-sphere and the ears attached to it, in attachment order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    pub base: PsSphereShape,
    pub base_embedding: Vec<usize>,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// Rebuild the decomposed complex on `n` vertices, checking every attachment.
    pub fn replay(&self, n: usize) -> Result<SimplicialComplex, PsError> {
        let mut acc = realize_sphere(&self.base).relabel(&self.base_embedding, n)?;
        for ear in &self.ears {
            acc = attach_ear(&acc, &ear.ball, &ear.embedding)?;
        }
        Ok(SimplicialComplex::new(n, acc.facets().iter().copied())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EarSearchOutcome {
    Found(EarDecomposition),
    /// The search space was exhausted.
    NotDecomposable,
    /// The node budget ran out before an answer was reached.
    BudgetExceeded { nodes: u64 },
}

struct Search {
    n: usize,
    rank: usize,
    budget: u64,
    nodes: u64,
    failed: HashSet<Vec<Face>>,
}

/// Search for a PS-ear decomposition by peeling ears off `c`.
///
/// An ear with apex `W` must be the star of `W`, its link must be a
/// PS-sphere `Σ`, and what remains must still contain `Σ * ∂W`. Peeling
/// stops when `h_d = 1`, where the remainder has to be a PS-sphere. Apexes
/// are tried by decreasing size.
pub fn find_ear_decomposition(c: &SimplicialComplex, budget: u64) -> Result<EarSearchOutcome, PsError> {
    if !c.is_pure() {
        return Err(PsError::NotPure);
    }
    let top = c.h_vector()?.top();
    let mut search = Search { n: c.n(), rank: c.rank(), budget, nodes: 0, failed: HashSet::new() };
    let result = search.peel(c.facets().to_vec(), top);
    Ok(match result {
        Some(d) => EarSearchOutcome::Found(d),
        None if search.nodes > search.budget => EarSearchOutcome::BudgetExceeded { nodes: search.nodes },
        None => EarSearchOutcome::NotDecomposable,
    })
}

impl Search {
    // The deepest peel is the first ear attached, so pushing after the
    // recursive call leaves `ears` in attachment order.
    fn peel(&mut self, facets: Vec<Face>, top: i64) -> Option<EarDecomposition> {
        self.nodes += 1;
        if self.nodes > self.budget || top < 1 || self.failed.contains(&facets) {
            return None;
        }
        if top == 1 {
            let c = SimplicialComplex::new(self.n, facets.iter().copied()).ok()?;
            return match recognize_ps_sphere(&c) {
                Some((base, base_embedding)) => Some(EarDecomposition { base, base_embedding, ears: Vec::new() }),
                None => {
                    self.failed.insert(facets);
                    None
                }
            };
        }
        if self.rank == 0 || !ridges_shared(&facets) {
            self.failed.insert(facets);
            return None;
        }
        for size in (1..=self.rank).rev() {
            for apex in faces_of_size(&facets, size) {
                let Some((ear, remaining)) = self.peelable(&facets, apex) else { continue };
                if let Some(mut d) = self.peel(remaining, top - 1) {
                    d.ears.push(ear);
                    return Some(d);
                }
                if self.nodes > self.budget {
                    return None;
                }
            }
        }
        self.failed.insert(facets);
        None
    }

    fn peelable(&self, facets: &[Face], apex: Face) -> Option<(Ear, Vec<Face>)> {
        let (star, remaining): (Vec<Face>, Vec<Face>) = facets.iter().partition(|f| apex.is_subset(**f));
        if remaining.is_empty() {
            return None;
        }
        let link = SimplicialComplex::new(self.n, star.iter().map(|f| f.difference(apex))).ok()?;
        let (sphere, sphere_embedding) = recognize_ps_sphere(&link)?;
        for g in link.facets() {
            for w in apex.iter() {
                let face = g.union(apex.without(w));
                if !remaining.iter().any(|f| face.is_subset(*f)) {
                    return None;
                }
            }
        }
        let mut embedding = sphere_embedding;
        embedding.extend(apex.iter());
        let ball = PsBallShape::new(sphere, apex.len() - 1);
        Some((Ear { ball, embedding }, remaining))
    }
}

fn ridges_shared(facets: &[Face]) -> bool {
    let mut once: HashSet<Face> = HashSet::new();
    let mut twice: HashSet<Face> = HashSet::new();
    for f in facets {
        for v in f.iter() {
            let r = f.without(v);
            if !once.insert(r) {
                twice.insert(r);
            }
        }
    }
    once.len() == twice.len()
}

fn faces_of_size(facets: &[Face], size: usize) -> Vec<Face> {
    let mut out: Vec<Face> = Vec::new();
    for f in facets {
        let elems = f.elements();
        let mut idx: Vec<usize> = (0..size).collect();
        if size > elems.len() {
            continue;
        }
        loop {
            out.push(Face::from_elements(idx.iter().map(|&i| elems[i])));
            let mut i = size;
            while i > 0 && idx[i - 1] == elems.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::mask_of;
    use crate::matroid::Matroid;

    const BUDGET: u64 = 1_000_000;

    fn decompose(c: &SimplicialComplex) -> EarDecomposition {
        match find_ear_decomposition(c, BUDGET).unwrap() {
            EarSearchOutcome::Found(d) => d,
            other => panic!("no decomposition: {other:?}"),
        }
    }

    #[test]
    fn sphere_needs_no_ears() {
        let c = realize_sphere(&PsSphereShape::cross_polytope(3));
        let d = decompose(&c);
        assert!(d.ears.is_empty());
        assert_eq!(d.replay(c.n()).unwrap(), c);
    }

    #[test]
    fn three_circuit_matroid_has_one_ear() {
        let circuits = [mask_of(&[0, 1, 2, 3]), mask_of(&[0, 1, 4, 5]), mask_of(&[2, 3, 4, 5])];
        let c = Matroid::from_circuits(6, 4, &circuits).unwrap().independence_complex();
        let d = decompose(&c);
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.replay(c.n()).unwrap(), c);
    }

    #[test]
    fn uniform_matroids_decompose() {
        for (r, n) in [(1, 4), (2, 4), (2, 5), (3, 6), (3, 5)] {
            let c = Matroid::uniform(r, n).unwrap().independence_complex();
            let d = decompose(&c);
            assert_eq!(d.ears.len() as i64 + 1, c.reduced_euler().unwrap().abs());
            assert_eq!(d.replay(c.n()).unwrap(), c);
        }
    }

    #[test]
    fn non_sphere_with_unit_top_is_rejected() {
        // A path: h = (1, 2, 0) so the top entry rules it out at once.
        let path = SimplicialComplex::new(4, [Face::from_elements([0, 1]), Face::from_elements([1, 2]), Face::from_elements([2, 3])]).unwrap();
        assert_eq!(find_ear_decomposition(&path, BUDGET).unwrap(), EarSearchOutcome::NotDecomposable);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let c = Matroid::uniform(2, 5).unwrap().independence_complex();
        assert!(matches!(find_ear_decomposition(&c, 1).unwrap(), EarSearchOutcome::BudgetExceeded { .. }));
    }

    #[test]
    fn impure_input_rejected() {
        let c = SimplicialComplex::new(3, [Face::from_elements([0, 1]), Face::from_elements([2])]).unwrap();
        assert_eq!(find_ear_decomposition(&c, BUDGET), Err(PsError::NotPure));
    }

    #[test]
    fn faces_enumeration() {
        let f = faces_of_size(&[Face::from_elements([0, 1, 2])], 2);
        assert_eq!(f.len(), 3);
        assert_eq!(faces_of_size(&[Face::from_elements([0, 1])], 0), vec![Face::EMPTY]);
    }
}
