use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tracerank"))
}

fn corpus_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", &format!("{name}.job")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tracerank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn corpus_entry_passes() {
    let (code, out, _) = run(&["corpus", "fig8-X0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ok rank at (1, 0): C 2, Q 2, Z 2"), "{out}");
}

#[test]
fn golden_mismatch_exits_4() {
    let text = std::fs::read_to_string(corpus_file("trefoil"))
        .unwrap()
        .replace("expect norm-curve: false;", "expect norm-curve: true;");
    let path = scratch("mismatch.job", &text);
    let (code, out, _) = run(&["corpus", &path]);
    assert_eq!(code, 4, "{out}");
    assert!(out.contains("MISMATCH norm curve"), "{out}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let path = scratch("bad.job", "vars: x y;\nideal: y - w;\n");
    let (code, _, err) = run(&["gb", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("2:") && err.contains("`w`"), "{err}");
    let path = scratch("slope.job", "vars: x;\nideal: x;\nslopes: 2/4;\n");
    let (code, _, err) = run(&["print", &path]);
    assert_eq!(code, 2);
    assert!(err.contains("not coprime"), "{err}");
}

#[test]
fn rank_without_peripheral_is_a_missing_section() {
    let path = scratch("noper.job", "vars: x y;\ndefined-over: Q;\nideal: y - 1;\n");
    let (code, _, err) = run(&["rank", &path, "--slope", "1/0"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing job section `peripheral`"), "{err}");
}

#[test]
fn rejected_basis_claim_exits_3() {
    let path = scratch(
        "claim.job",
        "vars: x y;\ndefined-over: Q;\nideal: y^2 + (-1-x^2)*y + (-1+2*x^2);\nperipheral: mu = x;\nclaim basis C at 1/0: 1, y, y^2;\n",
    );
    let (code, _, err) = run(&["basis", &path]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn gb_member_and_print() {
    let f = corpus_file("k8_20-X0");
    let (code, out, _) = run(&["gb", &f]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    let (_, out, _) = run(&["member", &f, "z^5 - 2*x*z^4 + (-2 + 3*x^2)*z^3 + (12*x - 9*x^3 + x^5)*z^2 + (-18*x^2 + 10*x^4 - x^6)*z + (6*x^3 - 2*x^5)"]);
    assert_eq!(out, "TRUE\n");
    let (_, printed, _) = run(&["print", &f]);
    let again = scratch("printed.job", &printed);
    let (_, twice, _) = run(&["print", &again]);
    assert_eq!(printed, twice);
}

#[test]
fn detect_json_is_stable() {
    let f = corpus_file("m003-Y0");
    let (code, a, _) = run(&["detect", &f, "--json"]);
    let (_, b, _) = run(&["detect", &f, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["closed_surface"]["verdict"], "NOT_DETECTED");
    assert_eq!(v["norm_curve"]["min_finite_rank"], 2);
}

#[test]
fn newton_and_witness() {
    let (code, out, _) = run(&["newton", "6*t^2 + t + 1", "--prime", "2", "--cl"]);
    assert_eq!(code, 0);
    assert!(out.contains("q = 3, r = 1, h* = 3*t^2 + t + 2"), "{out}");
    let (code, _, err) = run(&["newton", "t - 5", "--prime", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a prime"), "{err}");
}

#[test]
fn ani_requires_the_non_boundary_assertion() {
    let (code, _, _) = run(&["ani", "--slope-value", "t - 3", "--value", "ab=2*t - 1"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["ani", "--slope-value", "t - 3", "--value", "ab=2*t - 1", "--non-boundary"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ANI_CLOSED_SURFACE_EVIDENCE"), "{out}");
}
