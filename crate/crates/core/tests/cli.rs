use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn popfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popfactor")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn query(cmd: &str, inst: &str, m: &str, extra: &[&str]) -> Output {
    let (inst, m) = (data(inst), data(m));
    let mut args = vec![cmd, "--instance", &inst, "--matching", &m];
    args.extend_from_slice(extra);
    popfactor(&args)
}

#[test]
fn factor_text_and_json() {
    let o = query("factor", "tied_roommates.txt", "tied_roommates_m2.txt", &[]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("factor: 3/1\nmargin: 2\npopular: no\n"), "{}", stdout(&o));

    let o = query("factor", "tied_roommates.txt", "tied_roommates_m1.txt", &["--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["is_infinite"], true);
    assert_eq!(doc["margin"], 1);
    assert_eq!(doc["predicate_queries"], 1);

    let o = query("factor", "two_couples.txt", "two_couples_m.txt", &["--fastpath", "verify", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((doc["factor_num"].as_i64(), doc["factor_den"].as_i64()), (Some(3), Some(1)));
}

#[test]
fn margin_popular_and_oracle() {
    let o = query("margin", "tied_roommates.txt", "tied_roommates_m2.txt", &[]);
    assert!(stdout(&o).starts_with("margin: 2\n"));
    let o = query("popular", "tied_roommates.txt", "tied_roommates_m0.txt", &[]);
    assert_eq!(stdout(&o), "popular: yes\n");
    let o = query("popular", "tied_roommates.txt", "tied_roommates_m1.txt", &["--json"]);
    assert_eq!(stdout(&o).trim(), r#"{"popular":false}"#);
    let o = query("oracle", "strict_roommates.txt", "strict_roommates_m.txt", &[]);
    assert_eq!(stdout(&o), "factor: 3/1\nmargin: 2\n");
}

#[test]
fn auxiliary_graph_dump() {
    let o = query("aux", "strict_roommates.txt", "strict_roommates_m.txt", &["--k", "3"]);
    assert_eq!(stdout(&o), include_str!("../data/strict_roommates_aux_k3.txt"));
    let o = query("aux", "two_couples.txt", "two_couples_m.txt", &["--k", "2", "--cycle"]);
    assert!(stdout(&o).ends_with("# positive cycle: m1 -> w1 -> m2 -> w2 -> m1 (weight = 1)\n"));
    let o = query("aux", "tied_roommates.txt", "tied_roommates_m0.txt", &["--k", "2", "--cycle"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generator_and_stable() {
    let dir = std::env::temp_dir().join(format!("popfactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inst = dir.join("inst.txt");
    let m = dir.join("m.txt");
    let gen = |seed: &str| {
        popfactor(&["gen", "--kind", "mp", "--n", "8", "--seed", seed, "--matching-out", m.to_str().unwrap()])
    };
    let a = gen("3");
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&gen("3")));
    std::fs::write(&inst, &a.stdout).unwrap();

    let s = popfactor(&["stable", "--instance", inst.to_str().unwrap()]);
    assert!(s.status.success());
    std::fs::write(&m, &s.stdout).unwrap();
    let p = popfactor(&["popular", "--instance", inst.to_str().unwrap(), "--matching", m.to_str().unwrap()]);
    assert_eq!(stdout(&p), "popular: yes\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn edge_list_solver() {
    let dir = std::env::temp_dir().join(format!("popfactor-mwpm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.txt");
    std::fs::write(&g, "e 1 2 1\ne 2 3 2\ne 3 4 3\ne 4 1 4\n").unwrap();
    let o = popfactor(&["mwpm", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&o), "weight: 6\n1 4\n2 3\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let o = popfactor(&["selftest"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(popfactor(&["bogus"]).status.code(), Some(1));
    assert_eq!(popfactor(&["factor", "--instance", "/nonexistent", "--matching", "/nonexistent"]).status.code(), Some(1));
    let dir = std::env::temp_dir().join(format!("popfactor-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "a1 a3\na3 a4\n").unwrap();
    let inst = data("strict_roommates.txt");
    let o = popfactor(&["factor", "--instance", &inst, "--matching", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::write(&bad, "RP 2\na1: a9\n").unwrap();
    let o = popfactor(&["factor", "--instance", bad.to_str().unwrap(), "--matching", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}
