//! Finite bounded posets, mostly lattices of flats.
//!
//! Ranks follow the usual convention: the bottom element has rank 0 and
//! atoms have rank 1.

mod chains;

use std::fmt;

use thiserror::Error;

use crate::matroid::Matroid;

pub use chains::AtomBound;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the poset is empty")]
    Empty,
    #[error("cover ({0}, {1}) refers to an element outside the poset")]
    OutOfRange(usize, usize),
    #[error("the relation has a cycle through element {0}")]
    Cycle(usize),
    #[error("no unique least element")]
    NoBottom,
    #[error("no unique greatest element")]
    NoTop,
    #[error("matroid has loops {0:?}; simplify it first")]
    Loops(Vec<usize>),
    #[error("order complex needs {0} vertices, more than the complex limit")]
    TooLarge(usize),
    #[error("atom order is not a permutation of the atoms")]
    InvalidAtomOrder,
    #[error("cover ({0}, {1}) has no atom below the top and off the bottom; the lattice is not geometric")]
    NotGeometric(usize, usize),
}

/// First failure found by [`GradedLattice::is_geometric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometricViolation {
    /// A cover relation that skips a rank.
    NotGraded { lower: usize, upper: usize },
    /// A pair without a unique join or meet.
    NotALattice { x: usize, y: usize },
    /// `r(x ∨ y) + r(x ∧ y) > r(x) + r(y)`.
    NotSemimodular { x: usize, y: usize },
    /// An element that is not the join of the atoms below it.
    NotAtomistic { x: usize },
}

impl fmt::Display for GeometricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometricViolation::NotGraded { lower, upper } => write!(f, "cover {lower} < {upper} skips a rank"),
            GeometricViolation::NotALattice { x, y } => write!(f, "{x} and {y} have no unique join or meet"),
            GeometricViolation::NotSemimodular { x, y } => write!(f, "semimodularity fails for {x} and {y}"),
            GeometricViolation::NotAtomistic { x } => write!(f, "{x} is not a join of atoms"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(size: usize) -> Self {
        BitSet(vec![0; size.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_superset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b & !a == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| crate::bits::ones64(bits).map(move |i| w * 64 + i))
    }
}

/// A finite poset with a least and a greatest element, stored by its Hasse diagram.
#[derive(Clone)]
pub struct GradedLattice {
    up: Vec<Vec<usize>>,
    rank: Vec<usize>,
    above: Vec<BitSet>,
    below: Vec<BitSet>,
    bottom: usize,
    top: usize,
    flats: Option<Vec<u64>>,
}

impl fmt::Debug for GradedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedLattice(size={}, height={}, covers={:?})", self.len(), self.height(), self.up)
    }
}

impl GradedLattice {
    /// Build from any generating set of relations `x < y`; the Hasse
    /// diagram is recomputed, so non-cover relations are allowed.
    pub fn from_covers(size: usize, relations: &[(usize, usize)]) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut succ = vec![Vec::new(); size];
        let mut indeg = vec![0usize; size];
        for &(x, y) in relations {
            if x >= size || y >= size {
                return Err(LatticeError::OutOfRange(x, y));
            }
            if x == y {
                return Err(LatticeError::Cycle(x));
            }
            succ[x].push(y);
            indeg[y] += 1;
        }
        let mut topo = Vec::with_capacity(size);
        let mut stack: Vec<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() < size {
            let x = (0..size).find(|&x| indeg[x] > 0).expect("cycle member");
            return Err(LatticeError::Cycle(x));
        }
        let mut above: Vec<BitSet> = vec![BitSet::new(size); size];
        for &x in topo.iter().rev() {
            above[x].insert(x);
            let succs = succ[x].clone();
            for y in succs {
                let ay = above[y].clone();
                above[x].union_with(&ay);
            }
        }
        let mut below: Vec<BitSet> = vec![BitSet::new(size); size];
        for x in 0..size {
            for y in above[x].iter() {
                below[y].insert(x);
            }
        }
        let bottoms: Vec<usize> = (0..size).filter(|&x| above[x].iter().count() == size).collect();
        let tops: Vec<usize> = (0..size).filter(|&x| below[x].iter().count() == size).collect();
        let bottom = *bottoms.first().ok_or(LatticeError::NoBottom)?;
        let top = *tops.first().ok_or(LatticeError::NoTop)?;
        let mut up = vec![Vec::new(); size];
        for x in 0..size {
            for y in above[x].iter() {
                if y == x {
                    continue;
                }
                let between = above[x].intersection(&below[y]).iter().count();
                if between == 2 {
                    up[x].push(y);
                }
            }
        }
        let mut rank = vec![0usize; size];
        for &x in &topo {
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        Ok(GradedLattice { up, rank, above, below, bottom, top, flats: None })
    }

    /// Flats of a loopless matroid ordered by inclusion; element `i` is `flats()[i]`.
    pub fn of_flats(m: &Matroid) -> Result<Self, LatticeError> {
        if !m.is_loopless() {
            return Err(LatticeError::Loops(crate::bits::elements_of(m.loops())));
        }
        let flats = m.flats().to_vec();
        let ranks: Vec<usize> = flats.iter().map(|&f| m.rank_of(f)).collect();
        let mut covers = Vec::new();
        for (i, &f) in flats.iter().enumerate() {
            for (j, &g) in flats.iter().enumerate() {
                if ranks[j] == ranks[i] + 1 && f & !g == 0 {
                    covers.push((i, j));
                }
            }
        }
        let mut l = GradedLattice::from_covers(flats.len(), &covers)?;
        l.flats = Some(flats);
        Ok(l)
    }

    /// Subsets of a `d`-set; element `x` is the subset with bitmask `x`.
    pub fn boolean(d: usize) -> Self {
        let size = 1usize << d;
        let covers: Vec<(usize, usize)> =
            (0..size).flat_map(|x| (0..d).filter(move |b| x >> b & 1 == 0).map(move |b| (x, x | 1 << b))).collect();
        GradedLattice::from_covers(size, &covers).expect("boolean lattice")
    }

    /// `0 < 1 < ... < len`.
    pub fn chain(len: usize) -> Self {
        let covers: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
        GradedLattice::from_covers(len + 1, &covers).expect("chain")
    }

    /// Componentwise order; element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &GradedLattice) -> Self {
        let (a, b) = (self.len(), other.len());
        let mut covers = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for &i2 in &self.up[i] {
                    covers.push((i * b + j, i2 * b + j));
                }
                for &j2 in &other.up[j] {
                    covers.push((i * b + j, i * b + j2));
                }
            }
        }
        GradedLattice::from_covers(a * b, &covers).expect("product of bounded posets")
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Rank of the top element.
    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.up[self.bottom].clone()
    }

    /// The flat behind each element, for lattices built by [`GradedLattice::of_flats`].
    pub fn flats(&self) -> Option<&[u64]> {
        self.flats.as_deref()
    }

    /// Number of elements at each rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.height() + 1];
        for &r in &self.rank {
            if r < counts.len() {
                counts[r] += 1;
            }
        }
        counts
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let upper = self.above[x].intersection(&self.above[y]);
        let least = upper.iter().find(|&u| self.above[u].is_superset(&upper));
        least
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower = self.below[x].intersection(&self.below[y]);
        let greatest = lower.iter().find(|&u| self.below[u].is_superset(&lower));
        greatest
    }

    /// Check gradedness, the lattice property, semimodularity and atomisticity, in that order.
    pub fn is_geometric(&self) -> Result<(), GeometricViolation> {
        for x in 0..self.len() {
            for &y in &self.up[x] {
                if self.rank[y] != self.rank[x] + 1 {
                    return Err(GeometricViolation::NotGraded { lower: x, upper: y });
                }
            }
        }
        let mut joins = vec![vec![0usize; self.len()]; self.len()];
        let mut meets = vec![vec![0usize; self.len()]; self.len()];
        for x in 0..self.len() {
            for y in x..self.len() {
                match (self.join(x, y), self.meet(x, y)) {
                    (Some(j), Some(m)) => {
                        joins[x][y] = j;
                        joins[y][x] = j;
                        meets[x][y] = m;
                        meets[y][x] = m;
                    }
                    _ => return Err(GeometricViolation::NotALattice { x, y }),
                }
            }
        }
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if self.rank[joins[x][y]] + self.rank[meets[x][y]] > self.rank[x] + self.rank[y] {
                    return Err(GeometricViolation::NotSemimodular { x, y });
                }
            }
        }
        let atoms = self.atoms();
        for x in 0..self.len() {
            let j = atoms.iter().filter(|&&a| self.leq(a, x)).fold(self.bottom, |acc, &a| joins[acc][a]);
            if j != x {
                return Err(GeometricViolation::NotAtomistic { x });
            }
        }
        Ok(())
    }

    /// `μ(0̂, 1̂)`, from `μ(0̂, 0̂) = 1` and `Σ_{0̂ ≤ y ≤ x} μ(0̂, y) = 0` for `x ≠ 0̂`.
    pub fn mobius(&self) -> i64 {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.below[x].iter().count());
        let mut mu = vec![0i64; self.len()];
        for &x in &order {
            if x == self.bottom {
                mu[x] = 1;
            } else {
                mu[x] = -self.below[x].iter().filter(|&y| y != x).map(|y| mu[y]).sum::<i64>();
            }
        }
        mu[self.top]
    }
}

/// Remove every coloop; returns the remaining matroid and how many were removed.
///
/// For a simple matroid the lattice of flats of the input is the product of
/// the remaining lattice with a boolean lattice of that rank.
pub fn strip_boolean_factor(m: &Matroid) -> (Matroid, usize) {
    let coloops = m.coloops();
    let rest = m.restriction(m.ground() & !coloops).expect("subset of the ground set");
    (rest, coloops.count_ones() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_face_lattice() -> GradedLattice {
        // 0 = ∅; 1..=4 vertices; 5..=8 edges {1,2},{2,3},{3,4},{4,1}; 9 = square
        let mut covers = Vec::new();
        for v in 1..=4 {
            covers.push((0, v));
        }
        let edges = [(1, 2), (2, 3), (3, 4), (4, 1)];
        for (i, &(a, b)) in edges.iter().enumerate() {
            covers.push((a, 5 + i));
            covers.push((b, 5 + i));
            covers.push((5 + i, 9));
        }
        GradedLattice::from_covers(10, &covers).unwrap()
    }

    #[test]
    fn flats_of_triangle() {
        let l = GradedLattice::of_flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.height(), 2);
        assert_eq!(l.atoms().len(), 3);
        assert_eq!(l.rank_counts(), vec![1, 3, 1]);
        assert!(l.is_geometric().is_ok());
        assert_eq!(l.mobius(), 2);
    }

    #[test]
    fn free_matroid_gives_boolean_lattice() {
        let l = GradedLattice::of_flats(&Matroid::free(3)).unwrap();
        assert_eq!(l.rank_counts(), GradedLattice::boolean(3).rank_counts());
        assert_eq!(l.mobius(), -1);
        assert_eq!(GradedLattice::boolean(3).mobius(), -1);
    }

    #[test]
    fn loops_are_rejected() {
        let m = Matroid::from_bases(2, [0b01]).unwrap();
        assert_eq!(GradedLattice::of_flats(&m).unwrap_err(), LatticeError::Loops(vec![1]));
    }

    #[test]
    fn non_geometric_examples() {
        assert!(matches!(
            square_face_lattice().is_geometric(),
            Err(GeometricViolation::NotSemimodular { .. })
        ));
        assert_eq!(GradedLattice::chain(3).is_geometric(), Err(GeometricViolation::NotAtomistic { x: 2 }));
        // 0 < a < 1 and 0 < b < c < 1
        let skewed = GradedLattice::from_covers(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert!(matches!(skewed.is_geometric(), Err(GeometricViolation::NotGraded { .. })));
        // two incomparable maximal elements below the top sharing two lower bounds
        let bowtie = GradedLattice::from_covers(
            6,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!(matches!(bowtie.is_geometric(), Err(GeometricViolation::NotALattice { .. })));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GradedLattice::from_covers(0, &[]).unwrap_err(), LatticeError::Empty);
        assert!(matches!(GradedLattice::from_covers(2, &[(0, 1), (1, 0)]), Err(LatticeError::Cycle(_))));
        assert_eq!(GradedLattice::from_covers(3, &[(0, 1), (0, 2)]).unwrap_err(), LatticeError::NoTop);
        assert_eq!(GradedLattice::from_covers(2, &[(0, 2)]).unwrap_err(), LatticeError::OutOfRange(0, 2));
    }

    #[test]
    fn single_point_lattice() {
        let l = GradedLattice::chain(0);
        assert_eq!(l.mobius(), 1);
        assert!(l.is_geometric().is_ok());
    }

    #[test]
    fn product_multiplies_mobius() {
        let tri = GradedLattice::of_flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        for d in 0..4 {
            let p = tri.product(&GradedLattice::boolean(d));
            assert_eq!(p.mobius(), tri.mobius() * GradedLattice::boolean(d).mobius());
            assert!(p.is_geometric().is_ok());
        }
    }

    #[test]
    fn strip_coloops() {
        let (rest, d) = strip_boolean_factor(&Matroid::free(3));
        assert_eq!((rest.n(), rest.rank(), d), (0, 0, 3));
        let m = Matroid::uniform(2, 3).unwrap().direct_sum(&Matroid::free(1)).unwrap();
        let (rest, d) = strip_boolean_factor(&m);
        assert_eq!(rest, Matroid::uniform(2, 3).unwrap());
        assert_eq!(d, 1);
        let l = GradedLattice::of_flats(&m).unwrap();
        let prod = GradedLattice::of_flats(&rest).unwrap().product(&GradedLattice::boolean(d));
        assert_eq!(l.rank_counts(), prod.rank_counts());
        assert_eq!(l.mobius(), prod.mobius());
    }
}
