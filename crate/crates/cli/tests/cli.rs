use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn agree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agree")).args(args).env_remove("AGREE_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().filter(|l| !l.starts_with('#')).skip(1).map(String::from).collect()
}

fn line_with<'a>(text: &'a str, label: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(label)).unwrap_or_else(|| panic!("no line `{label}` in\n{text}"))
}

#[test]
fn compute_reports_estimates() {
    let o = agree(&["compute", "90", "10", "10", "90"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(line_with(&out, "Holley and Guilford's G").ends_with("0.80000"));
    assert!(line_with(&out, "Cohen's kappa").ends_with("0.80000"));
    assert!(line_with(&out, "Yule's Q").ends_with("0.97561"));
}

#[test]
fn compute_with_tests_and_json() {
    let o = agree(&["compute", "184", "54", "14", "63", "--test", "--boot", "1000", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["g ", "sac ", "kappa ", "ac1 "] {
        assert!(line_with(&out, name).contains("H1+"), "{name}");
    }
    // b = 54 against c = 14 is an undirected rejection.
    assert!(line_with(&out, "mn_chi2 ").contains("reject"));

    let o = agree(&["compute", "184", "54", "14", "63", "--test", "--json", "--boot", "1000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 315);
    assert_eq!(v["estimates"].as_array().unwrap().len(), 23);
    assert_eq!(v["decisions"].as_array().unwrap().len(), 13);
}

#[test]
fn compute_exit_codes() {
    assert_eq!(agree(&["compute", "0", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(agree(&["compute", "-1", "0", "0", "3"]).status.code(), Some(2));
    assert_eq!(agree(&["compute", "1", "x", "0", "0"]).status.code(), Some(1));
    assert_eq!(agree(&["compute", "1", "2"]).status.code(), Some(1));
    assert_eq!(agree(&["compute", "1", "1", "1", "1", "--test", "--alpha", "2"]).status.code(), Some(1));
    assert_eq!(agree(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumerate_counts_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = agree(&["enumerate", "--from", "2", "--to", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# agree "));
    assert_eq!(data_rows(&out).len(), 30);
    assert!(String::from_utf8_lossy(&o.stderr).contains("30 tables"));

    assert_eq!(agree(&["enumerate", "--from", "3", "--to", "2"]).status.code(), Some(1));
    assert_eq!(agree(&["enumerate", "--from", "0", "--to", "2"]).status.code(), Some(1));
    let bad = dir.path().join("missing").join("t.csv");
    assert_eq!(
        agree(&["enumerate", "--from", "2", "--to", "3", "--out", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn challenge_sets() {
    let regular = stdout(&agree(&["challenge", "--set", "regular"]));
    // Column 7 is the all-50 table.
    for label in
        ["Holley and Guilford's G", "Gwet's AC1", "Scott's pi", "Cohen's kappa", "Pearson's r", "Yule's Q", "Yule's Y"]
    {
        let cells: Vec<&str> = line_with(&regular, label)[label.len()..].split_whitespace().collect();
        assert_eq!(cells[6], "0.00000", "{label}");
    }
    let b_adj: Vec<&str> = line_with(&regular, "Adjusted B")["Adjusted B".len()..].split_whitespace().collect();
    assert_eq!(b_adj[6], "-0.50000");

    let extreme = stdout(&agree(&["challenge", "--set", "extreme"]));
    let r: Vec<&str> = line_with(&extreme, "Pearson's r")["Pearson's r".len()..].split_whitespace().collect();
    assert_eq!(r[6], "div/0");
    let ac1: Vec<&str> = line_with(&extreme, "Gwet's AC1")["Gwet's AC1".len()..].split_whitespace().collect();
    assert_eq!(ac1[6], "0.94744");
    // Two header lines, then 13 estimator rows of 8 columns.
    let rows: Vec<&str> = extreme.lines().skip(2).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|l| l
        .split_whitespace()
        .rev()
        .take_while(|c| c.parse::<f64>().is_ok() || *c == "div/0")
        .count()
        == 8));
}

fn run_study(dir: &Path, extra: &[&str]) -> Output {
    let mut args =
        vec!["study", "--from", "30", "--to", "34", "--boot", "300", "--seed", "5", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    agree(&args)
}

#[test]
fn study_outputs_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (one, four) = (dir.path().join("one"), dir.path().join("four"));
    let o = run_study(&one, &["--threads", "1", "--procedures", "g,kappa,pi,mn_norm"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run_study(&four, &["--threads", "4", "--procedures", "g,kappa,pi,mn_norm"]).status.code(), Some(0));
    for f in ["study.csv", "mistakes.csv", "density.csv", "hexbin.csv", "correlations.csv"] {
        let (a, b) = (fs::read(one.join(f)).unwrap(), fs::read(four.join(f)).unwrap());
        assert!(a == b, "{f} differs between thread counts");
        assert!(a.starts_with(b"# agree "), "{f} lacks provenance");
    }
    // Rerunning into the same directory overwrites in place.
    assert_eq!(run_study(&one, &["--threads", "2", "--procedures", "g,kappa,pi,mn_norm"]).status.code(), Some(0));
    assert_eq!(fs::read(one.join("study.csv")).unwrap(), fs::read(four.join("study.csv")).unwrap());
    assert!(fs::read_dir(&one).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().ends_with(".partial")));

    let rows = data_rows(&one.join("study.csv"));
    assert_eq!(rows.len(), (31..=35).map(|k: usize| k * (k + 1) * (k + 2) / 6).sum::<usize>());
    let g_self = data_rows(&one.join("mistakes.csv")).into_iter().find(|l| l.starts_with("g,g,")).unwrap();
    assert_eq!(g_self.split(',').nth(3), Some("0"));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let (flag, env) = (dir.path().join("flag"), dir.path().join("env"));
    let common = ["study", "--from", "5", "--to", "6", "--boot", "200", "--procedures", "sac"];
    let mut a: Vec<&str> = common.to_vec();
    a.extend(["--seed", "77", "--out", flag.to_str().unwrap()]);
    assert_eq!(agree(&a).status.code(), Some(0));
    let mut b: Vec<&str> = common.to_vec();
    b.extend(["--out", env.to_str().unwrap()]);
    let o = Command::new(env!("CARGO_BIN_EXE_agree")).args(&b).env("AGREE_SEED", "77").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(flag.join("study.csv")).unwrap(), fs::read(env.join("study.csv")).unwrap());
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let study = dir.path().join("s");
    let o =
        agree(&["study", "--from", "64", "--to", "64", "--procedures", "g,kappa", "--out", study.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = study.join("study.csv");
    let csv = csv.to_str().unwrap();
    let svg = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let d = svg("density.svg");
    assert_eq!(
        agree(&["plot", "--input", csv, "--kind", "density", "--estimator", "g", "--out", &d]).status.code(),
        Some(0)
    );
    let text = fs::read_to_string(&d).unwrap();
    assert!(text.starts_with("<!-- agree "));
    assert!(text.contains("class=\"h0-band\""));
    assert!(text.contains("H0 [0.391, 0.609]"));

    let h = svg("hexbin.svg");
    assert_eq!(
        agree(&["plot", "--input", csv, "--kind", "hexbin", "--estimator", "g", "--out", &h]).status.code(),
        Some(0)
    );
    let again = svg("hexbin2.svg");
    agree(&["plot", "--input", csv, "--kind", "hexbin", "--estimator", "g", "--out", &again]);
    assert_eq!(fs::read(&h).unwrap(), fs::read(&again).unwrap());
    let text = fs::read_to_string(&h).unwrap();
    assert!(text.contains("total = 47905, non-computable = 0"));

    // Kappa is NA on two tables.
    let k = svg("kappa.svg");
    agree(&["plot", "--input", csv, "--kind", "hexbin", "--estimator", "kappa", "--out", &k]);
    assert!(fs::read_to_string(&k).unwrap().contains("total = 47903, non-computable = 2"));

    assert_eq!(
        agree(&["plot", "--input", csv, "--kind", "hexbin", "--estimator", "zeta", "--out", &k]).status.code(),
        Some(4)
    );
    assert_eq!(
        agree(&["plot", "--input", csv, "--kind", "density", "--estimator", "zeta", "--out", &k]).status.code(),
        Some(4)
    );
    // Known procedure without decisions in the file.
    assert_eq!(
        agree(&["plot", "--input", csv, "--kind", "density", "--estimator", "pi", "--out", &k]).status.code(),
        Some(1)
    );
}
