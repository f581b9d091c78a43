use std::fmt;

use crate::bits::{binomial, k_subsets, ones64};

use super::{Matroid, MatroidError};

pub const BASIS_CHAR: u8 = b'*';
pub const NON_BASIS_CHAR: u8 = b'0';

/// Lexicographically minimal basis-indicator string over the relabellings
/// that list elements in order of an invariant colouring.
///
/// Ordering on `CanonicalForm` compares `n`, then `rank`, then the string
/// bytes, so `'*'` sorts before `'0'`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub rank: usize,
    pub indicator: String,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.n, self.rank, self.indicator)
    }
}

impl CanonicalForm {
    pub fn to_matroid(&self) -> Matroid {
        Matroid::from_indicator(self.n, self.rank, &self.indicator)
            .expect("canonical forms always encode valid matroids")
    }
}

impl Matroid {
    /// Basis indicator over all `rank`-subsets in colex order.
    pub fn indicator_string(&self) -> String {
        k_subsets(self.n, self.rank)
            .map(|s| if self.is_basis(s) { BASIS_CHAR as char } else { NON_BASIS_CHAR as char })
            .collect()
    }

    /// Parse a basis-indicator string; the result is validated.
    pub fn from_indicator(n: usize, d: usize, s: &str) -> Result<Matroid, MatroidError> {
        if d > n || n > 63 {
            return Err(MatroidError::InvalidParameters(format!("indicator for n={n}, d={d}")));
        }
        let expected = binomial(n, d) as usize;
        if s.len() != expected {
            return Err(MatroidError::InvalidParameters(format!(
                "indicator has length {}, expected C({n},{d}) = {expected}",
                s.len()
            )));
        }
        let mut bases = Vec::new();
        for (c, set) in s.bytes().zip(k_subsets(n, d)) {
            match c {
                BASIS_CHAR => bases.push(set),
                NON_BASIS_CHAR => {}
                other => {
                    return Err(MatroidError::InvalidParameters(format!(
                        "unexpected character {:?} in indicator",
                        other as char
                    )))
                }
            }
        }
        Matroid::from_bases(n, bases)
    }

    pub fn canonical_form(&self) -> &CanonicalForm {
        &self.canonical().0
    }

    /// `perm[x]` is the canonical label of element `x`.
    pub fn canonical_labeling(&self) -> &[usize] {
        &self.canonical().1
    }

    /// The isomorphic copy whose indicator string is the canonical one.
    pub fn canonical_matroid(&self) -> Matroid {
        self.relabel(self.canonical_labeling())
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.n == other.n
            && self.rank == other.rank
            && self.bases.len() == other.bases.len()
            && self.canonical_form() == other.canonical_form()
    }

    /// Classes of elements whose transposition is an automorphism.
    fn twin_classes(&self) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.n).collect();
        for x in 0..self.n {
            if class[x] != x {
                continue;
            }
            for y in x + 1..self.n {
                if class[y] == y && self.transposition_is_automorphism(x, y) {
                    class[y] = x;
                }
            }
        }
        class
    }

    fn transposition_is_automorphism(&self, x: usize, y: usize) -> bool {
        let (bx, by) = (1u64 << x, 1u64 << y);
        self.bases.iter().all(|&b| {
            let (hx, hy) = (b & bx != 0, b & by != 0);
            hx == hy || self.is_basis(b ^ bx ^ by)
        })
    }

    fn canonical(&self) -> &(CanonicalForm, Vec<usize>) {
        self.derived.canonical.get_or_init(|| self.compute_canonical())
    }

    /// Colour elements by an isomorphism-invariant refinement: start from
    /// the number of bases through each element, then repeatedly split by
    /// the multiset of (neighbour colour, shared basis count) pairs.
    fn element_colours(&self) -> Vec<usize> {
        let n = self.n;
        let mut pair = vec![vec![0u32; n]; n];
        for &b in &self.bases {
            for x in ones64(b) {
                for y in ones64(b) {
                    pair[x][y] += 1;
                }
            }
        }
        let mut colour: Vec<usize> = vec![0; n];
        let mut classes = 0;
        loop {
            let keys: Vec<(usize, u32, Vec<(usize, u32)>)> = (0..n)
                .map(|x| {
                    let mut around: Vec<(usize, u32)> =
                        (0..n).filter(|&y| y != x).map(|y| (colour[y], pair[x][y])).collect();
                    around.sort_unstable();
                    (colour[x], pair[x][x], around)
                })
                .collect();
            let mut distinct = keys.clone();
            distinct.sort();
            distinct.dedup();
            colour = keys.iter().map(|k| distinct.binary_search(k).expect("present")).collect();
            if distinct.len() == classes {
                return colour;
            }
            classes = distinct.len();
        }
    }

    // Labels are assigned in increasing order, colour class by colour class.
    // The indicator segment for label `p` covers the `d`-subsets whose
    // largest element is `p`, so it is fixed once labels `0..=p` are placed;
    // at each level only the placements giving the smallest segment survive.
    fn compute_canonical(&self) -> (CanonicalForm, Vec<usize>) {
        let (n, d) = (self.n, self.rank);
        let twins = self.twin_classes();
        let colour = self.element_colours();
        let mut slot_colour = colour.clone();
        slot_colour.sort_unstable();
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        let mut indicator = String::new();
        if d == 0 {
            indicator.push(BASIS_CHAR as char);
        }
        for p in 0..n {
            let tails: Vec<u64> = if d >= 1 && p + 1 >= d { k_subsets(p, d - 1).collect() } else { Vec::new() };
            let mut best: Option<Vec<u8>> = None;
            let mut next: Vec<Vec<usize>> = Vec::new();
            let mut segment = Vec::with_capacity(tails.len());
            for seq in &frontier {
                let used = seq.iter().fold(0u64, |m, &x| m | 1u64 << x);
                let mut tried = 0u64;
                for x in 0..n {
                    if used >> x & 1 == 1 || colour[x] != slot_colour[p] || tried >> twins[x] & 1 == 1 {
                        continue;
                    }
                    tried |= 1u64 << twins[x];
                    segment.clear();
                    let xbit = 1u64 << x;
                    for &t in &tails {
                        let old = ones64(t).fold(xbit, |m, i| m | 1u64 << seq[i]);
                        segment.push(if self.is_basis(old) { BASIS_CHAR } else { NON_BASIS_CHAR });
                    }
                    let ord = match &best {
                        None => std::cmp::Ordering::Less,
                        Some(b) => segment.as_slice().cmp(b.as_slice()),
                    };
                    if ord == std::cmp::Ordering::Greater {
                        continue;
                    }
                    if ord == std::cmp::Ordering::Less {
                        best = Some(segment.clone());
                        next.clear();
                    }
                    let mut s = seq.clone();
                    s.push(x);
                    next.push(s);
                }
            }
            if let Some(b) = best {
                indicator.push_str(std::str::from_utf8(&b).expect("ascii"));
            }
            frontier = next;
        }
        let seq = &frontier[0];
        let mut perm = vec![0; n];
        for (label, &x) in seq.iter().enumerate() {
            perm[x] = label;
        }
        (CanonicalForm { n, rank: d, indicator }, perm)
    }
}
