use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn mcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcx")).args(args).env_remove("MCX_CENSUS_MAX_N").output().expect("run mcx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap_or_else(|| panic!("no {key} in\n{out}"))
}

#[test]
fn three_circuits_independence_and_bc() {
    let o = mcx(&["hvector", &data("three_circuits.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "bases"), "12");
    assert_eq!(value(&out, "h"), "(1,2,3,4,2)");
    assert_eq!(value(&out, "reduced_euler_abs"), "2");

    let out = stdout(&mcx(&["hvector", &data("three_circuits.toml"), "--complex", "bc"]));
    assert_eq!(value(&out, "facets"), "7");
    assert_eq!(value(&out, "h"), "(1,2,3,1,0)");
    assert_eq!(value(&out, "cone_points"), "1");
    assert_eq!(value(&out, "reduced_h"), "(1,2,3,1)");
}

#[test]
fn cycles_are_simplex_boundaries() {
    let out = stdout(&mcx(&["hvector", &data("cycle4.toml")]));
    assert_eq!(value(&out, "h"), "(1,1,1,1)");
    assert_eq!(value(&out, "ps_sphere"), "[3]");
    let out = stdout(&mcx(&["hvector", &data("triangle.toml")]));
    assert_eq!(value(&out, "h"), "(1,1,1)");
    assert_eq!(value(&out, "ps_sphere"), "[2]");
}

#[test]
fn flats_order_counts_agree() {
    let out = stdout(&mcx(&["hvector", &data("three_circuits.toml"), "--complex", "flats-order"]));
    assert_eq!(value(&out, "mobius_abs"), "7");
    assert_eq!(value(&out, "descending_chains"), "7");
    assert_eq!(value(&out, "reduced_euler_abs"), "7");
    let o = mcx(&["mobius", &data("three_circuits.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "nbc_bases"), "7");
}

#[test]
fn one_indexed_orders() {
    let a = stdout(&mcx(&["hvector", &data("three_circuits.toml"), "--complex", "bc", "--order", "6,5,4,3,2,1", "--one-indexed"]));
    let b = stdout(&mcx(&["hvector", &data("three_circuits.toml"), "--complex", "bc", "--order", "5,4,3,2,1,0"]));
    assert_eq!(value(&a, "h"), value(&b, "h"));
    assert_eq!(value(&a, "order"), "(6,5,4,3,2,1)");
}

#[test]
fn verify_f0_in_rank_two() {
    let o = mcx(&["verify", "f0", "--d", "2", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "passed"), "true");
    assert_eq!(value(&out, "violations"), "0");
}

#[test]
fn psi_lists_partitions() {
    let o = mcx(&["psi", "--d", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "classes"), "3");
    assert_eq!(value(&out, "complete"), "true");
    assert!(out.contains("table: classes (3 rows)"));
}

#[test]
fn cap_is_reported() {
    let out = stdout(&mcx(&["psi", "--d", "3", "--k", "2", "--nmax", "5"]));
    assert_eq!(value(&out, "n_scanned"), "5");
    assert_eq!(value(&out, "complete"), "false");
}

#[test]
fn int_poset_of_a_triangle() {
    let o = mcx(&["int-poset", &data("triangle.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("table: bases (3 rows)"));
    assert_eq!(value(&out, "rank_counts"), "(1,1,1)");
}

#[test]
fn decompose_finds_ears() {
    let o = mcx(&["decompose", &data("three_circuits.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "status"), "found");
}

#[test]
fn decompose_reports_cones() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cone.toml");
    std::fs::write(&path, "n = 3\nbases = [[0, 1], [0, 2]]\n").unwrap();
    let o = mcx(&["decompose", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "status"), "not-decomposable");
}

#[test]
fn bc_scan_finds_the_triangle() {
    let o = mcx(&["bc-scan", "--d", "2", "--k", "1", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&stdout(&o), "found"), "1");
}

#[test]
fn catalog_round_trip() {
    let o = mcx(&["ingest", &data("rank2_n4.catalog")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "matroids"), "4");
    assert_eq!(value(&out, "classes"), "4");

    let emitted = stdout(&mcx(&["enumerate", "--n", "5", "--d", "3"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r3n5.catalog");
    std::fs::write(&path, &emitted).unwrap();
    let out = stdout(&mcx(&["ingest", path.to_str().unwrap(), "--format", "csv"]));
    let canon: Vec<&str> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    let listed: Vec<&str> = emitted.lines().skip(1).collect();
    assert_eq!(canon, listed);
}

#[test]
fn output_is_independent_of_threads() {
    let args = ["psi", "--d", "2", "--k", "2", "--format", "csv"];
    let one = mcx(&[&args[..], &["--threads", "1"]].concat());
    let two = mcx(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "n = 4\nbases = [[0, 1], [2, 3]]\n").unwrap();
    assert_eq!(mcx(&["hvector", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, "n = 4\nbases = [[0, 1]\n").unwrap();
    assert_eq!(mcx(&["hvector", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(mcx(&["hvector", "/no/such/file.toml"]).status.code(), Some(2));
    assert_eq!(mcx(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(mcx(&["psi", "--d", "x", "--k", "1"]).status.code(), Some(2));
}
