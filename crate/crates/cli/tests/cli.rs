use std::process::Command;

use euclidean_algebra_cli::run;

fn ealg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ealg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = ealg(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

#[test]
fn multiplication_table_entry() {
    assert_eq!(ok(&["mul", "-n", "4", "[0,1,0,0]", "[0,0,0,1]"]), "[-1,0,0,0]");
    assert_eq!(ok(&["mul", "--naive", "-n", "4", "[0,1,0,0]", "[0,0,0,1]"]), "[-1,0,0,0]");
    assert_eq!(ok(&["--format", "json", "mul", "-n", "4", "[0,1,0,0]", "[0,0,0,1]"]), "[-1,0,0,0]");
}

#[test]
fn naive_and_fast_agree_in_print() {
    let a = format!(
        "[{}]",
        (0..64).map(|i| format!("{}", ((i * 37) % 23) as f64 / 7.0 - 1.5)).collect::<Vec<_>>().join(",")
    );
    let b = format!(
        "[{}]",
        (0..64).map(|i| format!("{}", ((i * 11) % 13) as f64 / 5.0 - 1.0)).collect::<Vec<_>>().join(",")
    );
    assert_eq!(ok(&["mul", "--naive", "-n", "64", &a, &b]), ok(&["mul", "--fast", "-n", "64", &a, &b]));
    let (code, _, err) = ealg(&["mul", "--naive", "--fast", "-n", "2", "[1,0]", "[1,0]"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn norm_det_pow_spectrum() {
    assert_eq!(ok(&["norm", "-n", "2", "[3,4]"]), "25");
    assert_eq!(ok(&["det", "-n", "4", "[1,1,0,0]"]), "2");
    assert_eq!(ok(&["pow", "-n", "4", "[0,1,0,0]", "4"]), "[-1,0,0,0]");
    assert_eq!(ok(&["pow", "-n", "3", "[-2,0,0]", "3"]), "[-8,0,0]");
    assert_eq!(ok(&["spectrum", "-n", "2", "[1,2]"]), "[1,2]\n[1,-2]");
    let big = format!(
        "[{}]",
        std::iter::once("1000".to_string())
            .chain(std::iter::repeat_n("0".to_string(), 511))
            .collect::<Vec<_>>()
            .join(",")
    );
    let out = ok(&["det", "-n", "512", &big]);
    assert!(out.starts_with("sign: 1\nlog_abs: 3536.7"), "{out}");
}

#[test]
fn inverses_and_zero_divisors() {
    for method in ["spectral", "linear"] {
        let out = ok(&["--format", "json", "inv", "--method", method, "-n", "2", "[0,1]"]);
        let v: Vec<f64> = serde_json::from_str(&out).unwrap();
        assert!(v[0].abs() < 1e-15 && (v[1] + 1.0).abs() < 1e-15, "{method}: {out}");
    }
    let (code, out, err) = ealg(&["inv", "-n", "4", "[1,0,-1,-1.4142135623730951]"]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("zero divisor"), "{err}");
    let (code, _, _) = ealg(&["inv", "--method", "linear", "-n", "4", "[1,0,-1,-1.4142135623730951]"]);
    assert_eq!(code, 3);
}

#[test]
fn zero_divisor_subcommands() {
    assert_eq!(ok(&["zdiv", "plane4", "1", "0", "I"]), "[1,0,-1,-1.41421]");
    let point = ok(&["--format", "json", "zdiv", "plane4", "-0.5", "2", "II"]);
    let check = ok(&["zdiv", "check", "-n", "4", &point]);
    assert!(check.ends_with("is_zero_divisor: true"), "{check}");
    assert!(ok(&["zdiv", "check", "-n", "2", "[3,4]"]).starts_with("det: 25\n"));
    let m = ok(&["--samples", "20000", "--seed", "9", "zdiv", "measure", "-n", "2", "--eps", "0.1"]);
    assert!(m.starts_with("seed: 9\n"), "{m}");
    let (code, _, _) = ealg(&["zdiv", "plane4", "1", "0", "III"]);
    assert_eq!(code, 2);
}

#[test]
fn haar_subcommands() {
    let out = ok(&["--samples", "20000", "haar", "box", "-n", "2", "--lower", "[1,1]", "--upper", "[2,2]"]);
    assert!(out.contains("clipped: 0"), "{out}");
    let inv = ok(&[
        "--samples",
        "20000",
        "haar",
        "invariance",
        "-n",
        "2",
        "--a",
        "[0.6,-0.3]",
        "--lower",
        "[1,1]",
        "--upper",
        "[2,2]",
    ]);
    assert!(inv.contains("invariant: true"), "{inv}");
    let (code, _, err) = ealg(&["haar", "box", "-n", "2", "--lower", "[2,1]", "--upper", "[1,2]"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn analytic_subcommands() {
    let cr = ok(&["analytic", "cr", "--field", "conjugate2d", "-n", "2", "--at", "[0.3,-0.4]"]);
    let r: f64 = cr.strip_prefix("residual: ").unwrap().parse().unwrap();
    assert!((r - 2.0).abs() < 1e-6);
    let (code, _, err) = ealg(&["analytic", "cr", "--field", "square", "-n", "3"]);
    assert_eq!(code, 2, "{err}");
    let lap = ok(&["analytic", "laplacian", "--field", "square", "-n", "3", "--at", "[0.1,0.2,0.3]"]);
    assert_eq!(lap, "[2,-2,2]");
    let lv = ok(&["--samples", "500", "analytic", "liouville", "--field", "identity", "-n", "4", "--radii", "[1,2]"]);
    assert!(lv.ends_with("max_norm: [1,2]"), "{lv}");
    let mv = ok(&[
        "--samples",
        "20000",
        "analytic",
        "meanvalue",
        "--field",
        "poly:[[1,0],[0,1],[0,0]]",
        "-n",
        "2",
        "--at",
        "[0.5,0.5]",
        "--r",
        "0.3",
    ]);
    assert!(mv.contains("within_3_sigma: true"), "{mv}");
    let (code, _, _) = ealg(&["analytic", "cr", "--field", "nope", "-n", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn square_roots_in_r4() {
    let plus = ok(&["roots4", "--sign", "+1"]);
    assert!(plus.lines().any(|l| l == "[1,0,0,0]"), "{plus}");
    assert!(plus.lines().any(|l| l == "[-1,0,0,0]"), "{plus}");
    let minus = ok(&["roots4", "--sign", "-1"]);
    assert!(minus.lines().any(|l| l == "[0,0,1,0]"), "{minus}");
    assert!(minus.lines().any(|l| l == "[0,0,-1,0]"), "{minus}");
    let (code, _, _) = ealg(&["roots4", "--sign", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_are_one_line() {
    for args in [
        &["bogus"][..],
        &["mul", "-n", "4", "[1,2]", "[0,0,0,1]"],
        &["norm", "-n", "1", "[1]"],
        &["norm", "-n", "2", "x"],
    ] {
        let (code, out, err) = ealg(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let (code, out, _) = ealg(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn randomized_output_is_reproducible() {
    let args = [
        "--seed",
        "17",
        "--samples",
        "30000",
        "--format",
        "json",
        "haar",
        "box",
        "-n",
        "3",
        "--lower",
        "[1,-0.1,-0.1]",
        "--upper",
        "[1.5,0.1,0.1]",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let mut seq = args.to_vec();
    seq.insert(0, "--sequential");
    assert_eq!(a, ok(&seq));
    assert!(a.starts_with(r#"{"seed":17,"#), "{a}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ealg");
    let out = Command::new(bin).args(["mul", "-n", "4", "[0,1,0,0]", "[0,0,0,1]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "[-1,0,0,0]\n");
    let out = Command::new(bin).args(["inv", "-n", "4", "[1,0,-1,-1.4142135623730951]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin).args(["norm"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
