use crate::bits::ones64;

use super::{Matroid, MatroidError};

/// Map a subset of `keep` onto `{0..|keep|}` preserving order.
fn compress(set: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    for (i, x) in ones64(keep).enumerate() {
        if set >> x & 1 == 1 {
            out |= 1u64 << i;
        }
    }
    out
}

impl Matroid {
    /// `M|A`, relabelled onto `{0..|A|}` in increasing order.
    pub fn restriction(&self, a: u64) -> Result<Matroid, MatroidError> {
        if a & !self.ground() != 0 {
            let element = 63 - (a & !self.ground()).leading_zeros() as usize;
            return Err(MatroidError::ElementOutOfRange { element, n: self.n });
        }
        let r = self.rank_of(a);
        let bases: Vec<u64> = self
            .bases
            .iter()
            .map(|&b| b & a)
            .filter(|s| s.count_ones() as usize == r)
            .map(|s| compress(s, a))
            .collect();
        Ok(Matroid::from_bases_unchecked(a.count_ones() as usize, bases))
    }

    /// `M \ A`.
    pub fn deletion(&self, a: u64) -> Result<Matroid, MatroidError> {
        if a & self.ground() == self.ground() && self.n > 0 {
            return Err(MatroidError::DeleteAll);
        }
        self.restriction(self.ground() & !a)
    }

    /// Delete the loops and all but the smallest element of each parallel class.
    pub fn simplification(&self) -> Matroid {
        let keep = self.parallel_classes().iter().fold(0u64, |m, &c| m | (c & c.wrapping_neg()));
        self.restriction(keep).expect("subset of the ground set")
    }

    /// `M / A`, relabelled onto the remaining elements in increasing order.
    pub fn contraction(&self, a: u64) -> Result<Matroid, MatroidError> {
        if a & !self.ground() != 0 {
            let element = 63 - (a & !self.ground()).leading_zeros() as usize;
            return Err(MatroidError::ElementOutOfRange { element, n: self.n });
        }
        let r = self.rank_of(a);
        let keep = self.ground() & !a;
        let bases: Vec<u64> = self
            .bases
            .iter()
            .filter(|&&b| (b & a).count_ones() as usize == r)
            .map(|&b| compress(b & keep, keep))
            .collect();
        Ok(Matroid::from_bases_unchecked(keep.count_ones() as usize, bases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::mask_of;

    #[test]
    fn contracting_uniform() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(m.contraction(0b1).unwrap(), Matroid::uniform(1, 3).unwrap());
    }

    #[test]
    fn restriction_to_basis_complement() {
        let circuits = [mask_of(&[0, 1, 2, 3]), mask_of(&[0, 1, 4, 5]), mask_of(&[2, 3, 4, 5])];
        let m = Matroid::from_circuits(6, 4, &circuits).unwrap();
        let b = mask_of(&[0, 1, 3, 4]);
        assert!(m.is_basis(b));
        let r = m.restriction(m.ground() & !b).unwrap();
        assert_eq!((r.n(), r.rank(), r.basis_count()), (2, 2, 1));
    }

    #[test]
    fn simplify_parallel_classes() {
        let v = Matroid::vdk(2, 2).unwrap();
        let s = v.simplification();
        assert_eq!(s, Matroid::free(2));
        let with_loop = Matroid::from_bases(3, [0b001, 0b010]).unwrap();
        assert_eq!(with_loop.simplification(), Matroid::free(1));
        assert!(Matroid::uniform(2, 4).unwrap().simplification().is_simple());
    }

    #[test]
    fn deleting_everything_fails() {
        let m = Matroid::uniform(1, 2).unwrap();
        assert_eq!(m.deletion(0b11), Err(MatroidError::DeleteAll));
        assert_eq!(m.deletion(0b01).unwrap(), Matroid::free(1));
    }

    #[test]
    fn minor_rank_identities() {
        let m = Matroid::vdk(3, 2).unwrap();
        let a = 0b0000101u64;
        let c = m.contraction(a).unwrap();
        let keep = m.ground() & !a;
        // r_{M/A}(X) = r(X ∪ A) - r(A)
        for x in 0..(1u64 << c.n()) {
            let mut orig = 0u64;
            for (i, e) in ones64(keep).enumerate() {
                if x >> i & 1 == 1 {
                    orig |= 1u64 << e;
                }
            }
            assert_eq!(c.rank_of(x), m.rank_of(orig | a) - m.rank_of(a));
        }
        let d = m.deletion(a).unwrap();
        for x in 0..(1u64 << d.n()) {
            let mut orig = 0u64;
            for (i, e) in ones64(keep).enumerate() {
                if x >> i & 1 == 1 {
                    orig |= 1u64 << e;
                }
            }
            assert_eq!(d.rank_of(x), m.rank_of(orig));
        }
    }
}
