use std::collections::HashMap;
use std::fmt;

use crate::complex::HVector;

use super::CensusError;

/// Exponent vector of a monomial in `x0, x1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &e in &self.0 {
            out = out.into_iter().flat_map(|p: Vec<u8>| (0..=e).map(move |x| [p.as_slice(), &[x]].concat())).collect();
        }
        out.into_iter().map(Monomial).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PureOOutcome {
    /// Top-degree monomials whose divisors realize the vector.
    Certificate(Vec<Monomial>),
    /// The search was exhausted.
    NoCertificate,
    Unknown { nodes: u64 },
}

fn monomials_of_degree(vars: usize, degree: usize) -> Vec<Monomial> {
    fn go(vars: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == vars {
            prefix.push(left as u8);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u8);
            go(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    match vars {
        0 if degree == 0 => out.push(Monomial(Vec::new())),
        0 => {}
        _ => go(vars, degree, &mut Vec::new(), &mut out),
    }
    out
}

/// Look for a pure O-sequence certificate of `h` (trailing zeros dropped):
/// `h_s` monomials of top degree `s` in `h_1` variables whose divisors
/// number exactly `h_i` in each degree `i`.
pub fn pure_o_certificate(h: &HVector, budget: u64) -> Result<PureOOutcome, CensusError> {
    let h = h.trimmed();
    let h = h.as_slice();
    if h.first() != Some(&1) || h.iter().any(|&x| x < 0) {
        return Err(CensusError::InvalidQuery(format!("need h_0 = 1 and nonnegative entries, got {h:?}")));
    }
    let s = h.len() - 1;
    let vars = if s == 0 { 0 } else { h[1] as usize };
    let candidates: Vec<(Monomial, Vec<Monomial>)> =
        monomials_of_degree(vars, s).into_iter().map(|m| (m.clone(), m.divisors())).collect();
    let mut search = Search {
        target: h,
        candidates: &candidates,
        counts: vec![0; s + 1],
        multiplicity: HashMap::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    if search.run(0) {
        return Ok(PureOOutcome::Certificate(search.chosen.iter().map(|&i| candidates[i].0.clone()).collect()));
    }
    Ok(if search.nodes > budget { PureOOutcome::Unknown { nodes: search.nodes } } else { PureOOutcome::NoCertificate })
}

struct Search<'a> {
    target: &'a [i64],
    candidates: &'a [(Monomial, Vec<Monomial>)],
    counts: Vec<i64>,
    multiplicity: HashMap<Monomial, u32>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, from: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let top = self.target.len() - 1;
        let need = self.target[top] as usize - self.chosen.len();
        if need == 0 {
            return self.counts.as_slice() == self.target;
        }
        if self.candidates.len() - from < need {
            return false;
        }
        for i in from..self.candidates.len() {
            if self.candidates.len() - i < need {
                break;
            }
            self.add(i);
            if self.counts.iter().zip(self.target).all(|(c, t)| c <= t) && self.run(i + 1) {
                return true;
            }
            self.remove(i);
            if self.nodes > self.budget {
                return false;
            }
        }
        false
    }

    fn add(&mut self, i: usize) {
        for d in &self.candidates[i].1 {
            let m = self.multiplicity.entry(d.clone()).or_insert(0);
            if *m == 0 {
                self.counts[d.degree()] += 1;
            }
            *m += 1;
        }
        self.chosen.push(i);
    }

    fn remove(&mut self, i: usize) {
        for d in &self.candidates[i].1 {
            let m = self.multiplicity.get_mut(d).expect("added before");
            *m -= 1;
            if *m == 0 {
                self.counts[d.degree()] -= 1;
            }
        }
        self.chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certificate(h: &[i64]) -> PureOOutcome {
        pure_o_certificate(&HVector::new(h.to_vec()), 1_000_000).unwrap()
    }

    fn check(h: &[i64], cert: &[Monomial]) {
        let s = h.len() - 1;
        let mut all: Vec<Monomial> = cert.iter().flat_map(|m| m.divisors()).collect();
        all.sort();
        all.dedup();
        for (i, &hi) in h.iter().enumerate() {
            assert_eq!(all.iter().filter(|m| m.degree() == i).count() as i64, hi);
        }
        assert!(cert.iter().all(|m| m.degree() == s));
    }

    #[test]
    fn small_vectors() {
        for h in [&[1, 2, 3][..], &[1, 3, 2], &[1, 2, 3, 4, 2], &[1, 3, 3, 1], &[1], &[1, 4, 6, 4, 1]] {
            match certificate(h) {
                PureOOutcome::Certificate(c) => check(h, &c),
                other => panic!("{h:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn impossible_vectors() {
        assert_eq!(certificate(&[1, 0, 1]), PureOOutcome::NoCertificate);
        // two variables give at most three quadrics
        assert_eq!(certificate(&[1, 2, 4]), PureOOutcome::NoCertificate);
        // one top monomial in two variables of degree 2 has at most two linear divisors but all three must appear
        assert_eq!(certificate(&[1, 3, 1]), PureOOutcome::NoCertificate);
        // a single cubic in two variables has only two quadric divisors
        assert_eq!(certificate(&[1, 2, 3, 1]), PureOOutcome::NoCertificate);
    }

    #[test]
    fn trailing_zeros_and_validation() {
        assert!(matches!(certificate(&[1, 2, 0]), PureOOutcome::Certificate(_)));
        assert!(pure_o_certificate(&HVector::new(vec![2, 1]), 10).is_err());
        assert!(matches!(
            pure_o_certificate(&HVector::new(vec![1, 4, 6, 4, 1]), 1),
            Ok(PureOOutcome::Unknown { .. })
        ));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial(vec![2, 1, 0]).to_string(), "x0^2*x1");
        assert_eq!(Monomial(vec![0, 0]).to_string(), "1");
        assert!(Monomial(vec![1, 0]).divides(&Monomial(vec![1, 1])));
    }
}
