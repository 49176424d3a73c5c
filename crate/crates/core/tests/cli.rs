use std::fs;
use std::process::{Command, Output};

fn sharpcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharpcert"))
        .args(args)
        .env_remove("SHARPCERT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn certify_p4() {
    let out = sharpcert(&["certify", "--p", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("sharpcert-v1\n"));
    assert!(text.contains("sharp_constant = 3/2\n"));
    assert!(text.contains("kernel = 1, 1/3, 1/3, 1/3\n"));
}

#[test]
fn certify_degenerate_and_invalid() {
    let out = sharpcert(&["certify", "--p", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "p=1: equality for all x; constant 1");
    assert_eq!(code(&sharpcert(&["certify", "--p", "0"])), 2);
    assert_eq!(code(&sharpcert(&["certify", "--p", "-3"])), 2);
    assert_eq!(code(&sharpcert(&["certify"])), 2);
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = tempdir();
    let path = dir.join("p7.cert");
    let path_str = path.to_str().unwrap();
    assert_eq!(code(&sharpcert(&["certify", "--p", "7", "--out", path_str])), 0);
    let out = sharpcert(&["verify", path_str]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    // Constant lowered by 1/100.
    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replace("sharp_constant = 1/2 + 1/2*sqrt(7)", "sharp_constant = 49/100 + 1/2*sqrt(7)");
    assert_ne!(tampered, text);
    let bad = dir.join("bad.cert");
    fs::write(&bad, tampered).unwrap();
    let out = sharpcert(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("minor_values[p] != 0"), "{}", stdout(&out));

    // Truncated file.
    let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
    fs::write(&bad, truncated).unwrap();
    assert_eq!(code(&sharpcert(&["verify", bad.to_str().unwrap()])), 2);

    assert_eq!(code(&sharpcert(&["verify", dir.join("missing").to_str().unwrap()])), 2);
}

#[test]
fn machine_certificate_verifies() {
    let dir = tempdir();
    let path = dir.join("p5.machine");
    let p = path.to_str().unwrap();
    assert_eq!(code(&sharpcert(&["certify", "--p", "5", "--format", "machine", "--out", p])), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains('=') && !l.contains(" = ")));
    let out = sharpcert(&["verify", p, "--format", "machine"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("status=verified"));
}

#[test]
fn check_examples() {
    let out = sharpcert(&["check", "--vector", "1,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ratio = 1.0"));
    assert!(text.contains("bound = 1.2071067811865475"));

    let out = sharpcert(&["check", "--vector", "1,0.3333333333,0.3333333333,0.3333333333", "--format", "machine"]);
    assert_eq!(code(&out), 0);
    let gap: f64 = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("gap="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap.abs() < 1e-9);

    assert_eq!(code(&sharpcert(&["check", "--vector", "0,0"])), 2);
    assert_eq!(code(&sharpcert(&["check", "--vector", "1,nan"])), 2);
    assert_eq!(code(&sharpcert(&["check", "--vector", "1,,2"])), 2);
    assert_eq!(code(&sharpcert(&["check", "--vector", "-1,2"])), 0);
    assert_eq!(code(&sharpcert(&["check", "--vector", "1,1", "--tolerance", "-1"])), 2);
}

#[test]
fn minors_accept_rational_and_decimal_parameters() {
    let exact = stdout(&sharpcert(&["minors", "--p", "4", "--c", "3/2", "--format", "machine"]));
    let decimal = stdout(&sharpcert(&["minors", "--p", "4", "--c", "1.5", "--format", "machine"]));
    assert_eq!(exact, decimal);
    assert!(exact.contains("D_4=0\n"));
    assert!(exact.contains("positive_definite=false\n"));
    assert!(exact.contains("D_p(C)=0 + 0*C + -3/4*C^2 + -1*C^3 + 1*C^4\n"));

    let above = stdout(&sharpcert(&["minors", "--p", "4", "--c", "2", "--format", "machine"]));
    assert!(above.contains("positive_definite=true\n"));

    let at_phi = stdout(&sharpcert(&["minors", "--p", "3"]));
    assert!(at_phi.contains("D_3 = 0  [0]"));

    assert_eq!(code(&sharpcert(&["minors", "--p", "3", "--c", "1 + 1*sqrt(2)"])), 2);
    assert_eq!(code(&sharpcert(&["minors", "--p", "3", "--c", "abc"])), 2);
}

#[test]
fn eigen_reports_both_spectra() {
    let out = stdout(&sharpcert(&["eigen", "--p", "4", "--format", "machine"]));
    assert!(out.contains("closed_form=0 x1, 3/2 x2, 2 x1\n"), "{out}");
    let numeric: Vec<f64> = out
        .lines()
        .find_map(|l| l.strip_prefix("numeric="))
        .unwrap()
        .split(", ")
        .map(|v| v.parse().unwrap())
        .collect();
    for (got, want) in numeric.iter().zip([0.0, 1.5, 1.5, 2.0]) {
        assert!((got - want).abs() < 1e-9);
    }
    let p1 = stdout(&sharpcert(&["eigen", "--p", "1", "--c", "3", "--format", "machine"]));
    assert!(p1.contains("numeric=2.0\n"));
}

#[test]
fn search_and_dump() {
    let dir = tempdir();
    let dump = dir.join("samples.txt");
    let out = sharpcert(&[
        "search", "--p", "3", "--trials", "50", "--seed", "5", "--dump", dump.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("search-v1\n"));
    let lines: Vec<String> = fs::read_to_string(&dump).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 50);
    assert!(lines.iter().all(|l| l.split(' ').count() == 3 && l.split(' ').all(|v| v.parse::<f64>().is_ok())));

    let machine_a = stdout(&sharpcert(&["search", "--p", "4", "--trials", "9000", "--seed", "1", "--format", "machine"]));
    let machine_b = stdout(&sharpcert(&["search", "--p", "4", "--trials", "9000", "--seed", "1", "--format", "machine"]));
    assert_eq!(machine_a, machine_b);

    assert_eq!(code(&sharpcert(&["search", "--p", "3", "--trials", "0"])), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_sharpcert"))
        .args(["search", "--p", "3", "--trials", "10"])
        .env("SHARPCERT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn oracle_command() {
    let out = stdout(&sharpcert(&["oracle", "--p", "4", "--resolution", "10000", "--format", "machine"]));
    let max: f64 = out.lines().find_map(|l| l.strip_prefix("max=")).unwrap().parse().unwrap();
    assert!((max - 1.5).abs() < 1e-8);
    assert_eq!(code(&sharpcert(&["oracle", "--p", "1"])), 2);
    assert_eq!(code(&sharpcert(&["oracle", "--p", "2", "--resolution", "1"])), 2);
}

#[test]
fn adversarial_arguments_never_panic() {
    let cases: &[&[&str]] = &[
        &[],
        &["bogus"],
        &["certify", "--p", "99999999999999999999999"],
        &["certify", "--p", "abc"],
        &["minors", "--p", "2", "--c", "1/0"],
        &["minors", "--p", "2", "--c", "1 + 2*sqrt("],
        &["minors", "--p", "2", "--c", "inf"],
        &["eigen", "--p", "5", "--c", "1/2 + 1*sqrt(3)"],
        &["check", "--vector", ""],
        &["check", "--vector", "1e400"],
        &["check", "--vector", "1,2", "--tolerance", "nan"],
        &["search", "--p", "0"],
        &["search", "--p", "2", "--seed", "-1"],
        &["verify"],
        &["oracle", "--p", "3", "--resolution", "-5"],
        &["--help"],
        &["certify", "--p", "3", "--format", "xml"],
    ];
    for args in cases {
        let out = sharpcert(args);
        let c = code(&out);
        assert!((0..=2).contains(&c), "{args:?} -> {c}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.contains("panicked"), "{args:?}: {err}");
    }
}

#[test]
fn verify_rejects_garbage_files_without_panicking() {
    let dir = tempdir();
    let path = dir.join("garbage.cert");
    let base = stdout(&sharpcert(&["certify", "--p", "3"]));
    let variants = [
        base.replace("kernel = 1, ", "kernel = 1 + 1*sqrt(5), "),
        base.replace("dimension = 3", "dimension = 4"),
        base.replace("dimension = 3", "dimension = 1"),
        base.replace("equality_ratio = ", "equality_ratio = 1*sqrt(2) + "),
        base.replace("spectrum = ", "spectrum = 1*sqrt(7) x1, "),
        base.replace(" x1", " x99999999999999999999999"),
        "sharpcert-v1\n".to_string(),
        "\u{0}\u{1}".to_string(),
    ];
    for text in variants {
        fs::write(&path, &text).unwrap();
        let out = sharpcert(&["verify", path.to_str().unwrap()]);
        let c = code(&out);
        assert!(c == 1 || c == 2, "{text:?} -> {c}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
}

fn tempdir() -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "sharpcert-cli-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::create_dir_all(&dir).unwrap();
    dir
}
