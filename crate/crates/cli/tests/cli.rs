use std::process::{Command, Output};

fn psolv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psolv"))
        .args(args)
        .env_remove("PSOLV_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = psolv(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

fn first_param(doc: &serde_json::Value, stmt: &str, key: &str) -> serde_json::Value {
    doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["statement_id"] == stmt)
        .unwrap_or_else(|| panic!("no {stmt} report"))["verdict"]["parameters"][key]
        .clone()
}

#[test]
fn analyze_reports_p_length() {
    let o = psolv(&["analyze", "--recipe", "symmetric:4", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("p_length=2"), "{}", stdout(&o));
    let doc = json(&["analyze", "--recipe", "symmetric:4", "--p", "2"]);
    assert_eq!(first_param(&doc, "analysis", "p_length"), 2);
    let doc = json(&["analyze", "--recipe", "cyclic:15", "--p", "2"]);
    assert_eq!(first_param(&doc, "analysis", "p_length"), 0);
}

#[test]
fn lemma8_on_klein_four_exits_zero() {
    let o = psolv(&[
        "verify",
        "lemma8",
        "--recipe",
        "symmetric:4",
        "--p",
        "2",
        "--normal",
        "V4",
        "--l",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("holds"));
}

#[test]
fn group_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("psolv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v4.json");
    std::fs::write(&path, r#"{"degree":4,"generators":[[1,0,3,2],[2,3,0,1]]}"#).unwrap();
    let doc = json(&["analyze", "--file", path.to_str().unwrap(), "--p", "2"]);
    assert_eq!(first_param(&doc, "analysis", "order"), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["analyze", "--p", "2"],
        vec!["analyze", "--recipe", "symmetric:4", "--p", "4"],
        vec![
            "analyze",
            "--recipe",
            "symmetric:4",
            "--file",
            "x.json",
            "--p",
            "2",
        ],
        vec!["analyze", "--recipe", "nonsense:1", "--p", "2"],
        vec![
            "verify",
            "lemma8",
            "--recipe",
            "symmetric:4",
            "--p",
            "2",
            "--normal",
            "gen:(1,2)",
            "--l",
            "1",
        ],
    ] {
        let o = psolv(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stdout(&o));
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(psolv(&["--help"]).status.code(), Some(0));
    assert_eq!(psolv(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn filtration_subcommands() {
    let o = psolv(&[
        "pf",
        "search",
        "--recipe",
        "dihedral:4",
        "--p",
        "2",
        "--normal",
        "G",
        "--l",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not_pf_embedded"), "{}", stdout(&o));
    let o = psolv(&[
        "pf",
        "verify",
        "--recipe",
        "elementary_abelian:3:2",
        "--p",
        "3",
        "--terms",
        "G,1",
        "--l",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = psolv(&["ekr", "--recipe", "extraspecial:3:+", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_verifier_runs_on_s4() {
    for stmt in ["main", "thm6", "action", "o24"] {
        let o = psolv(&["verify", stmt, "--recipe", "symmetric:4", "--p", "2"]);
        assert_eq!(o.status.code(), Some(0), "{stmt}: {}", stdout(&o));
    }
}

#[test]
fn catalog_run_is_deterministic_and_reads_seed_from_env() {
    let args = [
        "catalog",
        "run",
        "--p",
        "2",
        "--seed",
        "7",
        "--format",
        "json",
        "--only",
        "symmetric:4",
        "--only",
        "sl2:3",
    ];
    let a = psolv(&args);
    let b = psolv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_psolv"))
        .args([
            "catalog",
            "run",
            "--p",
            "2",
            "--format",
            "json",
            "--only",
            "symmetric:4",
            "--only",
            "sl2:3",
        ])
        .env("PSOLV_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn question7_scan_lists_groups() {
    let o = psolv(&[
        "scan",
        "question7",
        "--recipe",
        "symmetric:4",
        "--recipe",
        "sl2:3",
        "--p",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("symmetric:4") && text.contains("sl2:3"), "{text}");
}

#[test]
fn catalog_list_names_every_recipe() {
    let o = psolv(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().count(),
        psolv::catalog::default_catalog().len()
    );
}
