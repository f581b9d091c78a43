use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};

use super::{GradedLattice, LatticeError};

/// One instance of the atom-count bound: `a ≥ (k+1)k^{d-1}` should force `|μ| > k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomBound {
    pub atoms: usize,
    pub rank: usize,
    pub k: u64,
    pub mobius_abs: u64,
    /// Whether `atoms ≥ (k+1)k^{rank-1}`.
    pub premise: bool,
    pub holds: bool,
}

impl GradedLattice {
    fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.bottom];
        self.extend_chains(&mut path, &mut out);
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty path");
        if self.up[last].is_empty() {
            out.push(path.clone());
            return;
        }
        for &y in &self.up[last] {
            path.push(y);
            self.extend_chains(path, out);
            path.pop();
        }
    }

    /// Chains of the poset as a complex on the element indices. With
    /// `proper`, the bottom and top are left out.
    pub fn order_complex(&self, proper: bool) -> Result<SimplicialComplex, LatticeError> {
        if self.len() > MAX_VERTICES {
            return Err(LatticeError::TooLarge(self.len()));
        }
        let facets = self.maximal_chains().into_iter().map(|chain| {
            Face::from_elements(chain.into_iter().filter(|&x| !proper || (x != self.bottom && x != self.top)))
        });
        Ok(SimplicialComplex::new(self.len(), facets).expect("indices fit"))
    }

    /// Maximal chains whose edge labels strictly decrease, where the edge
    /// `y ⋖ x` is labelled by the first atom in `atom_order` below `x` but
    /// not below `y`.
    pub fn descending_chains(&self, atom_order: &[usize]) -> Result<u64, LatticeError> {
        let atoms = self.atoms();
        let mut label = vec![usize::MAX; self.len()];
        for (i, &a) in atom_order.iter().enumerate() {
            if a >= self.len() || !atoms.contains(&a) || label[a] != usize::MAX {
                return Err(LatticeError::InvalidAtomOrder);
            }
            label[a] = i;
        }
        if atom_order.len() != atoms.len() {
            return Err(LatticeError::InvalidAtomOrder);
        }
        let edge_label = |y: usize, x: usize| -> Result<usize, LatticeError> {
            atom_order
                .iter()
                .position(|&a| self.leq(a, x) && !self.leq(a, y))
                .ok_or(LatticeError::NotGeometric(y, x))
        };
        let mut count = 0u64;
        let mut stack: Vec<(usize, usize)> = vec![(self.bottom, usize::MAX)];
        while let Some((y, last)) = stack.pop() {
            if y == self.top {
                count += 1;
                continue;
            }
            for &x in &self.up[y] {
                let l = edge_label(y, x)?;
                if l < last {
                    stack.push((x, l));
                }
            }
        }
        Ok(count)
    }

    pub fn atom_bound(&self, k: u64) -> AtomBound {
        let atoms = self.atoms().len();
        let rank = self.height();
        let mobius_abs = self.mobius().unsigned_abs();
        // a ≥ (k+1)k^{d-1}, multiplied through by k
        let premise = rank >= 1
            && k >= 1
            && (atoms as u128) * (k as u128) >= (k as u128 + 1) * (k as u128).pow(rank as u32);
        AtomBound { atoms, rank, k, mobius_abs, premise, holds: !premise || mobius_abs > k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn proper_part_of_triangle_flats() {
        let l = GradedLattice::of_flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let c = l.order_complex(true).unwrap();
        assert_eq!(c.facets().len(), 3);
        assert_eq!(c.rank(), 1);
        assert_eq!(c.reduced_euler().unwrap(), 2);
    }

    #[test]
    fn boolean_proper_parts() {
        let c = GradedLattice::boolean(2).order_complex(true).unwrap();
        assert_eq!(c.reduced_euler().unwrap().abs(), 1);
        let c = GradedLattice::boolean(3).order_complex(true).unwrap();
        assert_eq!(c.f_vector().unwrap().as_slice(), &[1, 6, 6]);
        assert_eq!(c.reduced_euler().unwrap(), -1);
        let full = GradedLattice::boolean(2).order_complex(false).unwrap();
        assert_eq!(full.cone_points().len(), 2);
    }

    #[test]
    fn descending_chains_of_triangle() {
        let l = GradedLattice::of_flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let atoms = l.atoms();
        assert_eq!(l.descending_chains(&atoms).unwrap(), 2);
        for order in permutations(&atoms) {
            assert_eq!(l.descending_chains(&order).unwrap(), 2);
        }
        assert_eq!(l.descending_chains(&atoms[..2]), Err(LatticeError::InvalidAtomOrder));
    }

    #[test]
    fn boolean_has_one_descending_chain() {
        for d in 0..5 {
            let l = GradedLattice::boolean(d);
            let mut atoms = l.atoms();
            assert_eq!(l.descending_chains(&atoms).unwrap(), 1);
            atoms.reverse();
            assert_eq!(l.descending_chains(&atoms).unwrap(), 1);
        }
    }

    #[test]
    fn chain_labels_are_ill_defined() {
        let l = GradedLattice::chain(2);
        assert!(matches!(l.descending_chains(&l.atoms()), Err(LatticeError::NotGeometric(_, _))));
    }

    #[test]
    fn atom_bound_instances() {
        let tri = GradedLattice::of_flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let b = tri.atom_bound(1);
        assert!(b.premise && b.holds);
        let line = GradedLattice::of_flats(&Matroid::uniform(2, 7).unwrap()).unwrap();
        let b = line.atom_bound(2);
        assert!(b.premise && b.holds && b.mobius_abs == 6);
        let b = tri.atom_bound(3);
        assert!(!b.premise && b.holds);
        // the boolean lattice of rank 2 meets the k = 1 threshold with |μ| = 1
        let b = GradedLattice::boolean(2).atom_bound(1);
        assert!(b.premise && !b.holds);
    }
}
