use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::activity::OrderedMatroid;
use crate::complex::HVector;
use crate::lattice::GradedLattice;
use crate::matroid::Matroid;
use crate::ps::{fbound, hbound};

use super::{pure_o_certificate, Census, CensusError, Family, PsiQuery, PsiResult, PureOOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Entrywise h- and f-vector bounds, tight at `V_{d,k}`.
    Hb,
    /// `f_0 <= 2d + k - 1`, with equality only at `V_{d,k}`.
    F0,
    /// Exactly one class reaches `f_0 = 2d + k - 1`.
    Uniq,
    /// At most `2^d k` bases.
    BasisBound,
    /// `2^d k T_{d,k} >= |Ψ_{d,k}|`.
    Tref,
    /// Flawless h-vectors for independence, broken-circuit and flat order complexes.
    Flawless,
    /// `|Ψ_{d,1}| <= |Ψ_{d,k}|`.
    Monot,
    /// Log-concave h-vectors for independence and broken-circuit complexes.
    Logconc,
    /// Every swept h-vector has a pure O-sequence certificate or an unknown verdict.
    PureO,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Hb,
        Suite::F0,
        Suite::Uniq,
        Suite::BasisBound,
        Suite::Tref,
        Suite::Flawless,
        Suite::Monot,
        Suite::Logconc,
        Suite::PureO,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hb => "hb",
            Suite::F0 => "f0",
            Suite::Uniq => "uniq",
            Suite::BasisBound => "basisbound",
            Suite::Tref => "tref",
            Suite::Flawless => "flawless",
            Suite::Monot => "monot",
            Suite::Logconc => "logconc",
            Suite::PureO => "pureo",
        }
    }

    fn census_wide(self) -> bool {
        matches!(self, Suite::Flawless | Suite::Logconc)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| CensusError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    /// Ranks to sweep; empty means `2, 3` for Ψ sweeps and every rank otherwise.
    pub ds: Vec<usize>,
    pub k_max: usize,
    /// Ground-set cap for census-wide suites (default 7) or an override of
    /// the `2d + k - 1` scan limit for Ψ sweeps.
    pub n_max: Option<usize>,
    pub budget: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { ds: Vec::new(), k_max: 3, n_max: None, budget: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checked: usize,
    pub violations: Vec<String>,
    /// False when some sweep stopped at the census cap before its bound.
    pub complete: bool,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `h_0 <= ... <= h_δ` and `h_i <= h_{s-i}` for `i <= δ`, where `s` is the
/// last nonzero index and `δ = ⌊s/2⌋`.
pub fn is_flawless(h: &HVector) -> bool {
    let h = h.trimmed();
    let h = h.as_slice();
    let s = h.len() - 1;
    let delta = s / 2;
    h[..=delta].windows(2).all(|w| w[0] <= w[1]) && (0..=delta).all(|i| h[i] <= h[s - i])
}

/// `h_i^2 >= h_{i-1} h_{i+1}` for every interior `i`.
pub fn is_log_concave(h: &HVector) -> bool {
    h.as_slice().windows(3).all(|w| w[1] * w[1] >= w[0] * w[2])
}

/// Isomorphism classes of loopless matroids of rank at most `d` with at most `k` bases.
///
/// Such a matroid is a loopless, coloop-free core of rank `r` plus
/// `d' - r` coloops for some rank `d' <= d`, so each core counts
/// `d - r + 1` times. A core with `b` bases has `r < b` and at most
/// `r + b - 1` elements, which keeps the search finite.
pub fn tdk(census: &Census, d: usize, k: usize) -> Result<u64, CensusError> {
    let mut total = 0u64;
    for r in 0..=d.min(k.saturating_sub(1)) {
        for n in r..=r + k - 1 {
            for m in census.loopless(n, r)?.iter() {
                if m.is_coloop_free() && m.basis_count() <= k {
                    total += (d - r + 1) as u64;
                }
            }
        }
    }
    Ok(total)
}

struct Sweep {
    d: usize,
    k: usize,
    result: PsiResult,
}

fn psi_sweep(census: &Census, params: &SuiteParams, extra: usize) -> Result<Vec<Sweep>, CensusError> {
    let ds = if params.ds.is_empty() { vec![2, 3] } else { params.ds.clone() };
    let mut out = Vec::new();
    for &d in &ds {
        for k in 1..=params.k_max {
            let n_max = params.n_max.unwrap_or(2 * d + k - 1 + extra);
            let result = census.psi(&PsiQuery { d, k, family: Family::All, n_max: Some(n_max) })?;
            out.push(Sweep { d, k, result });
        }
    }
    Ok(out)
}

/// Run one verification sweep over the census.
pub fn verify_suite(census: &Census, suite: Suite, params: &SuiteParams) -> Result<SuiteReport, CensusError> {
    let mut config = vec![("suite".to_string(), suite.to_string()), ("census_max_n".to_string(), census.max_n().to_string())];
    if suite.census_wide() {
        config.push(("n_max".into(), params.n_max.unwrap_or(7).to_string()));
        config.push(("ranks".into(), if params.ds.is_empty() { "all".into() } else { format!("{:?}", params.ds) }));
    } else {
        config.push(("ranks".into(), format!("{:?}", if params.ds.is_empty() { vec![2, 3] } else { params.ds.clone() })));
        config.push(("k_max".into(), params.k_max.to_string()));
        if let Some(n) = params.n_max {
            config.push(("n_max".into(), n.to_string()));
        }
    }
    let mut report = SuiteReport {
        suite,
        config,
        header: Vec::new(),
        rows: Vec::new(),
        checked: 0,
        violations: Vec::new(),
        complete: true,
    };
    match suite {
        Suite::Hb => hb(census, params, &mut report)?,
        Suite::F0 => f0(census, params, &mut report)?,
        Suite::Uniq => uniq(census, params, &mut report)?,
        Suite::BasisBound => basis_bound(census, params, &mut report)?,
        Suite::Tref => tref(census, params, &mut report)?,
        Suite::Flawless => flawless(census, params, &mut report)?,
        Suite::Monot => monot(census, params, &mut report)?,
        Suite::Logconc => logconc(census, params, &mut report)?,
        Suite::PureO => pure_o(census, params, &mut report)?,
    }
    Ok(report)
}

fn header(report: &mut SuiteReport, cols: &[&str]) {
    report.header = cols.iter().map(|s| s.to_string()).collect();
}

fn hb(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "classes", "complete", "vdk_tight"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 0)? {
        for r in &result.records {
            report.checked += 1;
            let f = r.matroid().independence_complex().f_vector().expect("pure");
            for i in 0..=d {
                if r.h.get(i) > hbound(d, k, i) {
                    report.violations.push(format!("{}: h_{i} = {} > {}", r.form, r.h.get(i), hbound(d, k, i)));
                }
                let dim = i as isize - 1;
                if f.f(dim) as i64 > fbound(d, k, dim) {
                    report.violations.push(format!("{}: f_{dim} = {} > {}", r.form, f.f(dim), fbound(d, k, dim)));
                }
            }
        }
        let v = Matroid::vdk(d, k)?.independence_complex();
        let (h, f) = (v.h_vector().expect("pure"), v.f_vector().expect("pure"));
        let tight = (0..=d).all(|i| h.get(i) == hbound(d, k, i) && f.f(i as isize - 1) as i64 == fbound(d, k, i as isize - 1));
        if !tight {
            report.violations.push(format!("V_{{{d},{k}}} misses the bound: h = {:?}", h.as_slice()));
        }
        report.complete &= result.complete;
        report.rows.push(vec![d.to_string(), k.to_string(), result.records.len().to_string(), result.complete.to_string(), tight.to_string()]);
    }
    Ok(())
}

fn f0(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "bound", "n_scanned", "classes", "max_f0", "at_bound"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 1)? {
        let bound = result.bound;
        let mut at_bound = 0;
        for r in &result.records {
            report.checked += 1;
            if r.n > bound {
                report.violations.push(format!("{}: f_0 = {} > {bound}", r.form, r.n));
            }
            if r.n == bound {
                at_bound += 1;
                if !r.matroid().is_isomorphic(&Matroid::vdk(d, k)?) {
                    report.violations.push(format!("{}: reaches f_0 = {bound} but is not V_{{{d},{k}}}", r.form));
                }
            }
        }
        report.complete &= result.complete;
        let max_f0 = result.records.iter().map(|r| r.n).max().unwrap_or(0);
        report.rows.push(
            [d, k, bound, result.n_scanned, result.records.len(), max_f0, at_bound].iter().map(|x| x.to_string()).collect(),
        );
    }
    Ok(())
}

fn uniq(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "bound", "complete", "at_bound", "is_vdk"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 0)? {
        let top: Vec<_> = result.records.iter().filter(|r| r.n == result.bound).collect();
        let is_vdk = top.len() == 1 && top[0].matroid().is_isomorphic(&Matroid::vdk(d, k)?);
        if result.complete {
            report.checked += 1;
            if !is_vdk {
                let forms: Vec<String> = top.iter().map(|r| r.form.to_string()).collect();
                report.violations.push(format!("d={d} k={k}: classes at f_0 = {} are {forms:?}", result.bound));
            }
        }
        report.complete &= result.complete;
        report.rows.push(vec![
            d.to_string(),
            k.to_string(),
            result.bound.to_string(),
            result.complete.to_string(),
            top.len().to_string(),
            is_vdk.to_string(),
        ]);
    }
    Ok(())
}

fn basis_bound(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "classes", "max_bases", "bound"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 0)? {
        let bound = (1usize << d) * k;
        for r in &result.records {
            report.checked += 1;
            if r.basis_count > bound {
                report.violations.push(format!("{}: {} bases > {bound}", r.form, r.basis_count));
            }
        }
        report.complete &= result.complete;
        let max = result.records.iter().map(|r| r.basis_count).max().unwrap_or(0);
        report.rows.push([d, k, result.records.len(), max, bound].iter().map(|x| x.to_string()).collect());
    }
    Ok(())
}

fn tref(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "T_dk", "bound", "psi"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 0)? {
        report.checked += 1;
        let t = tdk(census, d, k)?;
        let bound = (1u64 << d) * k as u64 * t;
        let psi = result.records.len() as u64;
        if bound < psi {
            report.violations.push(format!("d={d} k={k}: 2^d k T = {bound} < |Ψ| = {psi}"));
        }
        report.complete &= result.complete;
        report.rows.push([d as u64, k as u64, t, bound, psi].iter().map(|x| x.to_string()).collect());
    }
    Ok(())
}

fn monot(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "psi", "sigma"]);
    let sweeps = psi_sweep(census, params, 0)?;
    for s in &sweeps {
        let base = sweeps.iter().find(|t| t.d == s.d && t.k == 1).map(|t| t.result.records.len()).unwrap_or(0);
        let psi = s.result.records.len();
        let sigma = s.result.records.iter().filter(|r| r.simple).count();
        report.checked += 1;
        if psi < base {
            report.violations.push(format!("d={}: |Ψ_{{d,{}}}| = {psi} < |Ψ_{{d,1}}| = {base}", s.d, s.k));
        }
        report.complete &= s.result.complete;
        report.rows.push([s.d, s.k, psi, sigma].iter().map(|x| x.to_string()).collect());
    }
    Ok(())
}

fn pure_o(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    header(report, &["d", "k", "classes", "certified", "unknown"]);
    for Sweep { d, k, result } in psi_sweep(census, params, 0)? {
        let (mut certified, mut unknown) = (0, 0);
        for r in &result.records {
            report.checked += 1;
            match pure_o_certificate(&r.h, params.budget)? {
                PureOOutcome::Certificate(_) => certified += 1,
                PureOOutcome::Unknown { .. } => unknown += 1,
                PureOOutcome::NoCertificate => {
                    report.violations.push(format!("{}: h = {:?} is not a pure O-sequence", r.form, r.h.as_slice()))
                }
            }
        }
        report.complete &= result.complete;
        report.rows.push([d, k, result.records.len(), certified, unknown].iter().map(|x| x.to_string()).collect());
    }
    Ok(())
}

/// Loopless classes for census-wide suites, with their natural-order broken-circuit complexes.
fn census_classes(census: &Census, params: &SuiteParams) -> Result<Vec<Matroid>, CensusError> {
    let n_max = params.n_max.unwrap_or(7);
    Ok(census
        .loopless_up_to(n_max)?
        .into_iter()
        .filter(|m| m.rank() > 0 && (params.ds.is_empty() || params.ds.contains(&m.rank())))
        .collect())
}

fn bc_h(m: &Matroid) -> HVector {
    let om = OrderedMatroid::natural(m.clone());
    om.bc_complex().expect("loopless").h_vector().expect("pure")
}

fn flats_h(m: &Matroid) -> HVector {
    let l = GradedLattice::of_flats(m).expect("loopless");
    l.order_complex(true).expect("at most 128 flats").h_vector().expect("pure")
}

type Family3 = (&'static str, fn(&Matroid) -> HVector, bool);

fn family_sweep(
    census: &Census,
    params: &SuiteParams,
    report: &mut SuiteReport,
    families: &[Family3],
    test: fn(&HVector) -> bool,
) -> Result<(), CensusError> {
    header(report, &["complex", "checked", "violations"]);
    let classes = census_classes(census, params)?;
    for &(name, h_of, simple_only) in families {
        let pool: Vec<&Matroid> = classes.iter().filter(|m| !simple_only || m.is_simple()).collect();
        let bad: Vec<String> = pool
            .par_iter()
            .filter_map(|m| {
                let h = h_of(m);
                (!test(&h)).then(|| format!("{name} of {}: h = {:?}", m.canonical_form(), h.as_slice()))
            })
            .collect();
        report.checked += pool.len();
        report.rows.push(vec![name.to_string(), pool.len().to_string(), bad.len().to_string()]);
        report.violations.extend(bad);
    }
    Ok(())
}

fn independence_h(m: &Matroid) -> HVector {
    m.independence_complex().h_vector().expect("pure")
}

fn flawless(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    let families: [Family3; 3] =
        [("independence", independence_h, false), ("broken-circuit", bc_h, false), ("flats-order", flats_h, true)];
    family_sweep(census, params, report, &families, is_flawless)
}

fn logconc(census: &Census, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), CensusError> {
    let families: [Family3; 2] = [("independence", independence_h, false), ("broken-circuit", bc_h, false)];
    family_sweep(census, params, report, &families, is_log_concave)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flawless_and_log_concave_predicates() {
        assert!(is_flawless(&HVector::new(vec![1, 2, 3, 4, 2])));
        assert!(is_flawless(&HVector::new(vec![1, 2, 3, 1, 0])));
        assert!(!is_flawless(&HVector::new(vec![1, 3, 2, 4])));
        assert!(is_flawless(&HVector::new(vec![1, 1, 2, 2])));
        assert!(!is_flawless(&HVector::new(vec![1, 2, 1, 2])));
        assert!(is_log_concave(&HVector::new(vec![1, 2, 3, 4, 2])));
        assert!(!is_log_concave(&HVector::new(vec![1, 1, 3])));
    }

    #[test]
    fn tdk_small_values() {
        let census = Census::new(8);
        for d in 0..5 {
            assert_eq!(tdk(&census, d, 1).unwrap(), d as u64 + 1);
        }
        // direct count of loopless classes of rank <= d with <= k bases
        for d in 0..4 {
            for k in 1..4 {
                let mut direct = 0u64;
                for r in 0..=d {
                    for n in r..=r + k - 1 {
                        direct += census.loopless(n, r).unwrap().iter().filter(|m| m.basis_count() <= k).count() as u64;
                    }
                }
                assert_eq!(tdk(&census, d, k).unwrap(), direct, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>(), Err(CensusError::UnknownSuite("nope".into())));
    }

    #[test]
    fn rank_two_sweeps_pass() {
        let census = Census::default();
        let params = SuiteParams { ds: vec![2], ..SuiteParams::default() };
        for s in [Suite::Hb, Suite::F0, Suite::Uniq, Suite::BasisBound, Suite::Tref, Suite::Monot, Suite::PureO] {
            let r = verify_suite(&census, s, &params).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.violations);
            assert!(r.complete);
            assert_eq!(r.rows.len(), 3);
        }
    }

    #[test]
    fn census_wide_sweeps_pass() {
        let census = Census::default();
        let params = SuiteParams { n_max: Some(5), ..SuiteParams::default() };
        for s in [Suite::Flawless, Suite::Logconc] {
            let r = verify_suite(&census, s, &params).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.violations);
            assert!(r.checked > 0);
        }
    }
}
