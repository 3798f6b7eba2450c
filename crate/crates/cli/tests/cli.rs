use std::path::Path;
use std::process::{Command, Output};

fn locallab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locallab"))
        .args(args)
        .current_dir(dir)
        .env_remove("LOCALLAB_BUDGET")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn refuted_check_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&locallab(p, &["gen", "--family", "mono", "--n", "4", "--out", "mono4.json"])), 0);
    let out = locallab(p, &["check", "--input", "mono4.json", "--k", "3", "--l", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("[0, 1, 2]"));
    let out = locallab(p, &["check", "--input", "mono4.json", "--k", "3", "--l", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn oracle_prints_rainbow_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let out = locallab(dir.path(), &["oracle-f", "--n", "3", "--k", "3", "--l", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("f(3, 3, 3) = 3"));
    assert!(text.contains(r#"[[0,1,0],[0,2,1],[1,2,2]]"#));
}

#[test]
fn usage_and_budget_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&locallab(p, &["no-such-command"])), 2);
    assert_eq!(code(&locallab(p, &["check", "--input", "missing.json", "--k", "3", "--l", "2"])), 2);
    assert_eq!(code(&locallab(p, &["oracle-f", "--n", "4", "--k", "5", "--l", "2"])), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_locallab"))
        .args(["oracle-f", "--n", "6", "--k", "3", "--l", "2"])
        .env("LOCALLAB_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_locallab"))
        .args(["oracle-f", "--n", "3", "--k", "3", "--l", "3"])
        .env("LOCALLAB_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn emitted_certificates_verify_in_a_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("set.json"), r#"{"elements": [0, 1, 2, 3, 10, 11, 12, 13]}"#).unwrap();
    let setup: [&[&str]; 2] = [
        &["gen", "--family", "mono", "--n", "12", "--out", "m12.json"],
        &["gen", "--family", "random", "--n", "30", "--c", "2", "--seed", "1", "--out", "r30.json"],
    ];
    for args in setup {
        assert_eq!(code(&locallab(p, args)), 0);
    }
    let emit: [(&[&str], &str, Option<&[&str]>); 8] = [
        (&["check", "--input", "m12.json", "--k", "4", "--l", "3", "--cert", "c1.json"], "c1.json", Some(&["--input", "m12.json"])),
        (&["witness", "--input", "m12.json", "--preset", "thm2", "--k", "8", "--cert", "c2.json"], "c2.json", Some(&["--input", "m12.json"])),
        (&["witness", "--set", "set.json", "--preset", "thm4", "--k", "2", "--cert", "c3.json"], "c3.json", Some(&["--set", "set.json"])),
        (&["find", "kst", "--input", "r30.json", "--s", "2", "--t", "3", "--cert", "c4.json"], "c4.json", Some(&["--input", "r30.json"])),
        (&["find", "subdivision", "--input", "r30.json", "--t", "3", "--cert", "c5.json"], "c5.json", Some(&["--input", "r30.json"])),
        (&["oracle-f", "--n", "4", "--k", "3", "--l", "2", "--cert", "c6.json"], "c6.json", None),
        (&["oracle-g", "--n", "3", "--k", "3", "--l", "2", "--max", "4", "--cert", "c7.json"], "c7.json", None),
        (&["witness", "--input", "m12.json", "--preset", "raw", "--k", "12", "--cert", "c8.json"], "c8.json", Some(&["--input", "m12.json"])),
    ];
    for (args, cert, against) in emit {
        let out = locallab(p, args);
        assert!(matches!(code(&out), 0 | 1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let mut verify = vec!["verify", "--cert", cert];
        verify.extend(against.unwrap_or(&[]));
        let out = locallab(p, &verify);
        assert_eq!(code(&out), 0, "{cert}: {}", stdout(&out));
        assert!(stdout(&out).contains("accepted"));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    locallab(p, &["gen", "--family", "mono", "--n", "5", "--out", "m5.json"]);
    locallab(p, &["gen", "--family", "rainbow", "--n", "5", "--out", "r5.json"]);
    locallab(p, &["check", "--input", "m5.json", "--k", "3", "--l", "2", "--cert", "v.json"]);
    let out = locallab(p, &["verify", "--cert", "v.json", "--input", "r5.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("REJECTED"));
}

#[test]
fn sweep_writes_csv_in_palette_order() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let args = ["sweep", "--n", "10", "--c", "1..4", "--k", "4", "--l", "5", "--seeds", "5", "--exhaustive", "--out", "s.csv"];
    assert_eq!(code(&locallab(p, &args)), 0);
    let csv = std::fs::read_to_string(p.join("s.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "c,seeds,violations,frequency,min_colors_min,min_colors_mean");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1,5,5,1.0,1,"));
    assert_eq!(code(&locallab(p, &["sweep", "--n", "10", "--c", "5..1", "--k", "4", "--l", "5"])), 2);
}
