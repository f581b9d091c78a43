use std::path::Path;

use matroid_complexes::activity::OrderedMatroid;
use matroid_complexes::bits::ones64;
use matroid_complexes::census::{
    bc_conjecture_scan, emit_catalog, parse_catalog, verify_suite, Census, PsiQuery, PsiResult, Suite, SuiteParams,
    DEFAULT_MAX_N,
};
use matroid_complexes::complex::{Face, SimplicialComplex};
use matroid_complexes::lattice::GradedLattice;
use matroid_complexes::matroid::Matroid;
use matroid_complexes::ps::{find_ear_decomposition, recognize_ps_sphere, EarSearchOutcome};

use crate::input::{parse_order, MatroidFile};
use crate::report::{Report, Table};
use crate::{Cli, CliError, Command, ComplexKind, EarComplex, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let census = || Census::new(cli.nmax.unwrap_or(DEFAULT_MAX_N));
    let mut report = Report::new(echo());
    let witness = match &cli.command {
        Command::Hvector { file, complex, order } => hvector(cli, &mut report, file, *complex, order.as_deref())?,
        Command::Verify { suite, d, kmax } => verify(cli, &census(), &mut report, suite, d, *kmax)?,
        Command::Psi { d, k, family } => {
            let q = PsiQuery { family: *family, ..PsiQuery::new(*d, *k) };
            classes(&mut report, census().psi(&q)?)
        }
        Command::Sigma { d, k } => classes(&mut report, census().sigma(*d, *k, None)?),
        Command::IntPoset { file, order } => int_poset(cli, &mut report, file, order.as_deref())?,
        Command::Mobius { file } => mobius(cli, &mut report, file)?,
        Command::BcScan { d, k } => bc_scan(&census(), &mut report, *d, *k)?,
        Command::Decompose { file, complex, order } => decompose(cli, &mut report, file, *complex, order.as_deref())?,
        Command::Ingest { catalog } => ingest(&mut report, catalog)?,
        Command::Enumerate { n, d } => {
            let census = census();
            let classes = census.enumerate(*n, *d, true)?;
            return Ok(Outcome { report, witness: false, raw: Some(emit_catalog(*n, *d, &classes)) });
        }
    };
    Ok(Outcome { report, witness, raw: None })
}

fn echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("mcx {}", args.join(" ")).trim_end().to_string()
}

fn load(cli: &Cli, file: &Path) -> Result<Matroid, CliError> {
    MatroidFile::read(file)?.to_matroid(cli.one_indexed)
}

fn ordered(cli: &Cli, m: Matroid, order: Option<&str>) -> Result<OrderedMatroid, CliError> {
    match order {
        Some(text) => Ok(OrderedMatroid::new(m, parse_order(text, cli.one_indexed)?)?),
        None => Ok(OrderedMatroid::natural(m)),
    }
}

fn set(mask: u64, shift: usize) -> String {
    let items: Vec<String> = ones64(mask).map(|x| (x + shift).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn face(f: Face, shift: usize) -> String {
    let items: Vec<String> = f.iter().map(|x| (x + shift).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(","))
}

fn shift(cli: &Cli) -> usize {
    usize::from(cli.one_indexed)
}

/// Atoms of the flat lattice listed by their least element under `order`.
fn atom_order(l: &GradedLattice, order: &[usize]) -> Vec<usize> {
    let flats = l.flats().expect("lattice of flats");
    let mut position = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let mut atoms = l.atoms();
    atoms.sort_by_key(|&a| ones64(flats[a]).map(|x| position[x]).min());
    atoms
}

fn describe_complex(report: &mut Report, c: &SimplicialComplex) -> Result<(), CliError> {
    let f = c.f_vector()?;
    report.set("dimension", c.dim());
    report.set("facets", c.facets().len());
    report.set("f", &f);
    report.set("h", c.h_vector()?);
    report.set("reduced_euler_abs", c.reduced_euler()?.unsigned_abs());
    report.set("cone_points", c.cone_points().len());
    if let Some((shape, _)) = recognize_ps_sphere(c) {
        report.set("ps_sphere", shape);
    }
    Ok(())
}

fn hvector(
    cli: &Cli,
    report: &mut Report,
    file: &Path,
    kind: ComplexKind,
    order: Option<&str>,
) -> Result<bool, CliError> {
    let om = ordered(cli, load(cli, file)?, order)?;
    let m = om.matroid();
    report.set("n", m.n());
    report.set("rank", m.rank());
    report.set("bases", m.basis_count());
    report.set("order", tuple(&om.order().iter().map(|x| x + shift(cli)).collect::<Vec<_>>()));
    match kind {
        ComplexKind::Independence => {
            report.set("complex", "independence");
            describe_complex(report, &m.independence_complex())?;
        }
        ComplexKind::Bc => {
            report.set("complex", "bc");
            let c = om.bc_complex()?;
            describe_complex(report, &c)?;
            report.set("reduced_h", c.remove_cone_points().h_vector()?);
        }
        ComplexKind::ReducedBc => {
            report.set("complex", "reduced-bc");
            describe_complex(report, &om.reduced_bc_complex()?)?;
        }
        ComplexKind::FlatsOrder => {
            report.set("complex", "flats-order");
            let l = GradedLattice::of_flats(m)?;
            describe_complex(report, &l.order_complex(true)?)?;
            report.set("mobius_abs", l.mobius().unsigned_abs());
            report.set("descending_chains", l.descending_chains(&atom_order(&l, om.order()))?);
        }
    }
    Ok(false)
}

fn verify(cli: &Cli, census: &Census, report: &mut Report, suite: &str, ds: &[usize], kmax: usize) -> Result<bool, CliError> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let params = SuiteParams { ds: ds.to_vec(), k_max: kmax, n_max: cli.nmax, budget: cli.budget };
    let mut failed = false;
    for s in suites {
        let r = verify_suite(census, s, &params)?;
        let prefix = if suite == "all" { format!("{s}.") } else { String::new() };
        for (k, v) in &r.config {
            report.set(&format!("{prefix}{k}"), v);
        }
        report.set(&format!("{prefix}checked"), r.checked);
        report.set(&format!("{prefix}complete"), r.complete);
        report.set(&format!("{prefix}passed"), r.passed());
        let header: Vec<&str> = r.header.iter().map(String::as_str).collect();
        let mut t = Table::new(&s.to_string(), &header);
        t.rows = r.rows.clone();
        report.tables.push(t);
        report.violations.extend(r.violations.iter().map(|v| format!("{prefix}{v}")));
        failed |= !r.passed();
    }
    Ok(failed)
}

fn classes(report: &mut Report, result: PsiResult) -> bool {
    let q = &result.query;
    report.set("d", q.d);
    report.set("k", q.k);
    report.set("family", q.family);
    report.set("bound", result.bound);
    report.set("n_scanned", result.n_scanned);
    report.set("complete", result.complete);
    report.set("classes", result.records.len());
    let mut t = Table::new(
        "classes",
        &["n", "bases", "h", "simple", "connected", "reduced_bc_chi", "mobius_abs", "form"],
    );
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    for r in &result.records {
        t.push(vec![
            r.n.to_string(),
            r.basis_count.to_string(),
            r.h.to_string(),
            r.simple.to_string(),
            r.connected.to_string(),
            opt(r.reduced_bc_chi),
            opt(r.mobius_abs),
            r.form.indicator.clone(),
        ]);
    }
    report.tables.push(t);
    false
}

fn int_poset(cli: &Cli, report: &mut Report, file: &Path, order: Option<&str>) -> Result<bool, CliError> {
    let om = ordered(cli, load(cli, file)?, order)?;
    let p = om.int_poset();
    let s = shift(cli);
    report.set("bases", p.len());
    report.set("rank_counts", tuple(&p.rank_counts()));
    report.set("h", om.matroid().independence_complex().h_vector()?);
    let mut t = Table::new("bases", &["basis", "internally_passive", "size"]);
    for (b, ip) in p.bases.iter().zip(&p.passive) {
        t.push(vec![set(*b, s), set(*ip, s), ip.count_ones().to_string()]);
    }
    report.tables.push(t);
    if !p.is_antisymmetric() {
        report.violations.push("two bases share an internally passive set".into());
    }
    if let Some((a, b)) = p.lattice_violation() {
        report.violations.push(format!("{} and {} have no least upper bound", set(p.bases[a], s), set(p.bases[b], s)));
    }
    Ok(!report.violations.is_empty())
}

fn mobius(cli: &Cli, report: &mut Report, file: &Path) -> Result<bool, CliError> {
    let m = load(cli, file)?;
    if !m.is_loopless() {
        report.violations.push(format!("loops {}: the lattice of flats has no atoms there", set(m.loops(), shift(cli))));
        return Ok(true);
    }
    let l = GradedLattice::of_flats(&m)?;
    let mu = l.mobius().unsigned_abs();
    let chains = l.descending_chains(&atom_order(&l, &(0..m.n()).collect::<Vec<_>>()))?;
    let chi = l.order_complex(true)?.reduced_euler()?.unsigned_abs();
    let nbc = OrderedMatroid::natural(m.clone()).nbc_bases()?.len() as u64;
    report.set("rank", l.height());
    report.set("flats", l.len());
    report.set("rank_counts", tuple(&l.rank_counts()));
    report.set("atoms", l.atoms().len());
    report.set("mobius_abs", mu);
    report.set("descending_chains", chains);
    report.set("order_complex_reduced_euler_abs", chi);
    report.set("nbc_bases", nbc);
    if !(mu == chains && mu == chi && mu == nbc) {
        report.violations.push(format!("counts disagree: mobius {mu}, chains {chains}, euler {chi}, nbc {nbc}"));
    }
    let mut t = Table::new("atom_bound", &["k", "premise", "holds"]);
    for k in 1..=mu.max(1) {
        let b = l.atom_bound(k);
        t.push(vec![k.to_string(), b.premise.to_string(), b.holds.to_string()]);
    }
    report.tables.push(t);
    Ok(!report.violations.is_empty())
}

fn bc_scan(census: &Census, report: &mut Report, d: usize, k: i64) -> Result<bool, CliError> {
    let r = bc_conjecture_scan(census, d, k, census.max_n())?;
    report.set("d", r.d);
    report.set("k", r.k);
    report.set("n_max", r.n_max);
    report.set("found", r.found());
    let mut t = Table::new("scanned", &["n", "classes", "attaining"]);
    for &(n, scanned, attaining) in &r.per_n {
        t.push(vec![n.to_string(), scanned.to_string(), attaining.to_string()]);
    }
    report.tables.push(t);
    let mut t = Table::new("attaining", &["n", "orders_tried", "attaining_orders", "form"]);
    for e in &r.entries {
        t.push(vec![
            e.form.n.to_string(),
            e.orders_tried.to_string(),
            e.attaining_orders.to_string(),
            e.form.indicator.clone(),
        ]);
    }
    report.tables.push(t);
    Ok(r.found() > 0)
}

fn decompose(
    cli: &Cli,
    report: &mut Report,
    file: &Path,
    kind: EarComplex,
    order: Option<&str>,
) -> Result<bool, CliError> {
    let om = ordered(cli, load(cli, file)?, order)?;
    let c = match kind {
        EarComplex::Independence => om.matroid().independence_complex(),
        EarComplex::ReducedBc => om.reduced_bc_complex()?,
    };
    let s = shift(cli);
    report.set("h", c.h_vector()?);
    report.set("budget", cli.budget);
    match find_ear_decomposition(&c, cli.budget)? {
        EarSearchOutcome::Found(dec) => {
            let replayed = dec.replay(c.n())?;
            report.set("status", "found");
            report.set("base", &dec.base);
            report.set("base_vertices", tuple(&dec.base_embedding.iter().map(|x| x + s).collect::<Vec<_>>()));
            report.set("ears", dec.ears.len());
            let mut t = Table::new("ears", &["ball", "apex", "vertices"]);
            for ear in &dec.ears {
                let apex: Vec<usize> = ear.ball.apex().iter().map(|v| ear.embedding[v]).collect();
                t.push(vec![
                    ear.ball.to_string(),
                    face(Face::from_elements(apex), s),
                    tuple(&ear.embedding.iter().map(|x| x + s).collect::<Vec<_>>()),
                ]);
            }
            report.tables.push(t);
            if replayed != c {
                report.violations.push("replaying the ears does not rebuild the complex".into());
            }
        }
        EarSearchOutcome::NotDecomposable => {
            report.set("status", "not-decomposable");
            report.violations.push("no PS-ear decomposition exists".into());
        }
        EarSearchOutcome::BudgetExceeded { nodes } => {
            report.set("status", "budget-exceeded");
            report.set("nodes", nodes);
            report.violations.push(format!("search stopped after {nodes} nodes"));
        }
    }
    Ok(!report.violations.is_empty())
}

fn ingest(report: &mut Report, path: &Path) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    let catalog = parse_catalog(&text)?;
    let mut forms: Vec<_> = catalog.matroids.iter().map(|m| m.canonical_form().clone()).collect();
    report.set("n", catalog.n);
    report.set("d", catalog.d);
    report.set("matroids", catalog.matroids.len());
    let mut t = Table::new("matroids", &["line", "bases", "h", "loopless", "simple", "connected", "canonical"]);
    for (i, m) in catalog.matroids.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            m.basis_count().to_string(),
            m.independence_complex().h_vector()?.to_string(),
            m.is_loopless().to_string(),
            m.is_simple().to_string(),
            m.is_connected().to_string(),
            m.canonical_form().indicator.clone(),
        ]);
    }
    report.tables.push(t);
    forms.sort();
    forms.dedup();
    report.set("classes", forms.len());
    Ok(false)
}
