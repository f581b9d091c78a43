use std::fmt;

use crate::complex::{Face, SimplicialComplex};

use super::{Matroid, MatroidError, MAX_ELEMENTS};

/// Why a complex is not the independence complex of a matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotMatroidWitness {
    /// The void complex has no facets at all.
    Void,
    TooManyVertices(usize),
    /// The restriction to `vertices` has maximal faces `small` and `large`
    /// of different sizes.
    ImpureRestriction { vertices: Face, small: Face, large: Face },
}

impl fmt::Display for NotMatroidWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotMatroidWitness::Void => write!(f, "void complex"),
            NotMatroidWitness::TooManyVertices(n) => write!(f, "{n} vertices exceed the matroid limit"),
            NotMatroidWitness::ImpureRestriction { vertices, small, large } => write!(
                f,
                "restriction to {vertices} is impure: maximal faces {small} and {large}"
            ),
        }
    }
}

/// Recognize an independence complex: every induced subcomplex must be pure.
///
/// It suffices to check basis exchange on the facets. A failed exchange of
/// `x` from `B1` towards `B2` leaves `B1 - x` maximal but smaller than `B2`
/// inside `(B1 - x) ∪ B2`.
pub fn recognize_matroid_complex(c: &SimplicialComplex) -> Result<Matroid, NotMatroidWitness> {
    if c.is_void() {
        return Err(NotMatroidWitness::Void);
    }
    if c.n() > MAX_ELEMENTS {
        return Err(NotMatroidWitness::TooManyVertices(c.n()));
    }
    let facets = c.facets();
    let small = facets.iter().min_by_key(|f| f.len()).copied().expect("nonvoid");
    let large = facets.iter().max_by_key(|f| f.len()).copied().expect("nonvoid");
    if small.len() != large.len() {
        return Err(NotMatroidWitness::ImpureRestriction { vertices: c.vertex_set(), small, large });
    }
    match Matroid::from_bases(c.n(), facets.iter().map(|f| f.bits() as u64)) {
        Ok(m) => Ok(m),
        Err(MatroidError::ExchangeFailure { b1, b2, element }) => {
            let small = Face::from_elements(b1).without(element);
            let large = Face::from_elements(b2);
            Err(NotMatroidWitness::ImpureRestriction { vertices: small.union(large), small, large })
        }
        Err(e) => unreachable!("pure nonvoid facet family rejected: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::mask_of;

    #[test]
    fn simplex_is_free_matroid() {
        let m = recognize_matroid_complex(&SimplicialComplex::simplex(4)).unwrap();
        assert_eq!(m, Matroid::free(4));
    }

    #[test]
    fn doubled_path_boundary() {
        let v = Matroid::vdk(3, 1).unwrap();
        let m = recognize_matroid_complex(&v.independence_complex()).unwrap();
        assert_eq!(m, v);
    }

    #[test]
    fn path_of_three_edges_is_not_a_matroid() {
        // facets {0,1},{1,2},{2,3}: restricted to {0,1,3}, {0,1} and {3} are maximal
        let c = SimplicialComplex::new(4, [mask_of(&[0, 1]), mask_of(&[1, 2]), mask_of(&[2, 3])].map(|m| Face::from_bits(m as u128)))
            .unwrap();
        match recognize_matroid_complex(&c).unwrap_err() {
            NotMatroidWitness::ImpureRestriction { vertices, small, large } => {
                let r = c.restriction(vertices);
                assert!(r.facets().contains(&small));
                assert!(r.facets().contains(&large));
                assert_ne!(small.len(), large.len());
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn void_is_rejected() {
        assert_eq!(recognize_matroid_complex(&SimplicialComplex::void(3)), Err(NotMatroidWitness::Void));
    }
}
