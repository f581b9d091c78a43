use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::bits::k_subsets;
use crate::matroid::{CanonicalForm, Matroid};

/// Loopless single-element extensions of `m` by a new element labelled `m.n()`.
///
/// Each extension comes from a linear subclass of hyperplanes: a set `H`
/// such that every coline lies in none, exactly one, or all of the chosen
/// hyperplanes. The new element lies on precisely the hyperplanes in `H`.
/// Choosing every hyperplane would make the new element a loop and is skipped.
pub(crate) fn extensions(m: &Matroid) -> Vec<Matroid> {
    let d = m.rank();
    let n = m.n();
    if d == 0 {
        return Vec::new();
    }
    let hyperplanes = m.flats_of_rank(d - 1);
    let index: HashMap<u64, usize> = hyperplanes.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let colines = if d >= 2 { m.flats_of_rank(d - 2) } else { Vec::new() };
    let through: Vec<Vec<usize>> = hyperplanes
        .iter()
        .map(|&h| colines.iter().enumerate().filter(|(_, &c)| c & !h == 0).map(|(i, _)| i).collect())
        .collect();
    let spanning: Vec<(u64, usize)> = k_subsets(n, d - 1)
        .filter(|&s| m.is_independent(s))
        .map(|s| (s, index[&m.closure(s)]))
        .collect();

    let mut subclasses = Vec::new();
    let mut walk = Walk {
        through: &through,
        chosen: vec![false; hyperplanes.len()],
        chosen_at: vec![0; colines.len()],
        excluded_at: vec![0; colines.len()],
        out: &mut subclasses,
    };
    walk.run(0);

    let e = 1u64 << n;
    subclasses
        .into_iter()
        .filter(|h| !h.iter().all(|&c| c))
        .map(|h| {
            let mut bases = m.bases().to_vec();
            bases.extend(spanning.iter().filter(|&&(_, i)| !h[i]).map(|&(s, _)| s | e));
            Matroid::from_bases_unchecked(n + 1, bases)
        })
        .collect()
}

struct Walk<'a> {
    through: &'a [Vec<usize>],
    chosen: Vec<bool>,
    chosen_at: Vec<usize>,
    excluded_at: Vec<usize>,
    out: &'a mut Vec<Vec<bool>>,
}

impl Walk<'_> {
    fn run(&mut self, i: usize) {
        if i == self.chosen.len() {
            self.out.push(self.chosen.clone());
            return;
        }
        let colines = &self.through[i];
        // leave hyperplane i out: no coline through it may already hold two chosen
        if colines.iter().all(|&c| self.chosen_at[c] < 2) {
            for &c in colines {
                self.excluded_at[c] += 1;
            }
            self.run(i + 1);
            for &c in colines {
                self.excluded_at[c] -= 1;
            }
        }
        // take it: a coline reaching two chosen needs every hyperplane through it
        if colines.iter().all(|&c| self.chosen_at[c] == 0 || self.excluded_at[c] == 0) {
            for &c in colines {
                self.chosen_at[c] += 1;
            }
            self.chosen[i] = true;
            self.run(i + 1);
            self.chosen[i] = false;
            for &c in colines {
                self.chosen_at[c] -= 1;
            }
        }
    }
}

/// Loopless rank-`d` classes on `n` elements from the classes one size down.
///
/// Every such matroid either has a coloop, and is a smaller rank-`(d-1)`
/// matroid plus a coloop, or has a non-coloop element whose deletion
/// keeps the rank.
pub(crate) fn next_level(n: usize, d: usize, same_rank: &[Matroid], lower_rank: &[Matroid]) -> Vec<Matroid> {
    if n == 0 {
        return if d == 0 { vec![Matroid::free(0)] } else { Vec::new() };
    }
    let mut forms = same_rank
        .par_iter()
        .map(|m| extensions(m).into_iter().map(|x| x.canonical_form().clone()).collect::<BTreeSet<CanonicalForm>>())
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    for m in lower_rank {
        let with_coloop = m.add_coloop().expect("within the element limit");
        forms.insert(with_coloop.canonical_form().clone());
    }
    forms.into_iter().map(|f| f.to_matroid()).collect()
}
