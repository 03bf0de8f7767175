use std::path::Path;
use std::process::{Command, Output};

fn atomlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomlab"))
        .args(args)
        .current_dir(dir)
        .env_remove("ATOMLAB_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn kappa_of_complete_relation() {
    let dir = tempfile::tempdir().unwrap();
    let edges: String = (0..3).flat_map(|u| (0..3).map(move |v| format!("{u} {v}\n"))).collect();
    std::fs::write(dir.path().join("complete3.rel"), format!("3 9\n{edges}")).unwrap();
    let o = atomlab(&["kappa", "complete3.rel"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kappa=2\ncomplete=true"));
}

#[test]
fn kappa_text_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    for alg in ["auto", "brute", "maxflow"] {
        let t = atomlab(&["kappa", "--group", "Z8", "--gens", "1,2", "--algorithm", alg], dir.path());
        let j = atomlab(&["kappa", "--group", "Z8", "--gens", "1,2", "--algorithm", alg, "--json"], dir.path());
        assert_eq!(t.status.code(), Some(0));
        let v = json(&j);
        assert_eq!(v["kappa"], 2);
        assert!(stdout(&t).contains(&format!("kappa={}", v["kappa"])));
        assert_eq!(v["atom_size"], 1);
    }
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.rel"), "3 2\n0 1\n1 seven\n").unwrap();
    let o = atomlab(&["kappa", "bad.rel"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn verify_circulant_holds() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["verify", "--group", "Z7", "--gens", "1,2", "--vertex", "0", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["holds"], true);
    assert_eq!(v["rows"][1]["size"], 3);
    assert_eq!(v["rows"][2]["size"], 5);
}

#[test]
fn verify_rejects_non_symmetric_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("path3.rel"), "3 2\n0 1\n1 2\n").unwrap();
    let o = atomlab(&["verify", "path3.rel", "--reflexive-closure"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("point-symmetric"));
}

#[test]
fn girth_bound_on_loopless_cayley_graph() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["girth", "--group", "Z7", "--gens", "1,3", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["girth"], 3);
    assert_eq!(v["bound"], 5);
}

#[test]
fn exhaustive_scan_counts_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["scan", "--n", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked=4096"));
    let o = atomlab(&["scan", "--n", "6", "--mode", "exhaustive"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size limit"));
}

#[test]
fn random_scan_is_reproducible_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let mut v = json(&atomlab(
            &["scan", "--n", "7", "--mode", "random", "--samples", "300", "--seed", "5", "--threads", threads, "--json"],
            dir.path(),
        ));
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = run("1");
    assert_eq!(a["checked"], 300);
    assert_eq!(a, run("4"));
}

#[test]
fn zero_sum_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["zerosum", "--group", "Z6", "--gens", "2,3", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["k"].as_u64(), v["bound"].as_u64()), (Some(2), Some(3)));
    let o = atomlab(&["zerosum", "--group", "S3", "--gens", "(12),(123)"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k=2 bound=3"));
}

#[test]
fn identity_generator_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["zerosum", "--group", "Z5", "--gens", "0,1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cayley_edge_list_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = atomlab(&["cayley", "--group", "D4", "--gens", "r1,s0", "--reflexive", "-o", "d4.rel", "--dot", "d4.dot"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir.path().join("d4.dot")).unwrap().starts_with("digraph"));
    let direct = json(&atomlab(&["kappa", "--group", "D4", "--gens", "r1,s0", "--json"], dir.path()));
    let via_file = json(&atomlab(&["kappa", "d4.rel", "--json"], dir.path()));
    assert_eq!(direct["kappa"], via_file["kappa"]);
    assert_eq!(direct["edges"], 24);
    assert_eq!(via_file["edges"], 24);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(atomlab(&["kappa"], dir.path()).status.code(), Some(1));
    assert_eq!(atomlab(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(atomlab(&["--help"], dir.path()).status.code(), Some(0));
}
