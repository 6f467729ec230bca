use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use serde_json::Value;
use sumrank::cli::run;
use sumrank::json::code_id;
use sumrank_core::product::{cyclic_code, skew_cyclic_code, tensor_code};
use sumrank_core::{build_tower, Elem, Level, Metric, SkewPoly, DEFAULT_BUDGET};

const N9: &str = "[tower]\np = 2\nm = 3\nh = 2\nell = 3\nN = 3\n";
/// F27 over F3, K = F3, ℓ = 2, N = 3.
const F27: &str = "[tower]\np = 3\nm = 3\nh = 1\nell = 2\nN = 3\n";

fn write(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["sumrank"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn result(args: &[&str]) -> Value {
    let (code, v) = call(args);
    assert_eq!(code, 0, "{v}");
    v["result"].clone()
}

fn error_message(v: &Value) -> String {
    v["error"]["message"].as_str().unwrap().to_string()
}

#[test]
fn tower_command_describes_the_tower() {
    let r = result(&[
        "tower", "--p", "2", "--m", "3", "--h", "2", "--ell", "3", "--N", "3",
    ]);
    assert_eq!(r["N"], 3);
    assert_eq!(r["moduli"]["F"].as_array().unwrap().len(), 4);
    assert_eq!(r["moduli"]["L"].as_array().unwrap().len(), 7);
    let (code, v) = call(&[
        "tower", "--p", "2", "--m", "3", "--h", "3", "--ell", "3", "--N", "3",
    ]);
    assert_eq!(code, 2);
    assert!(error_message(&v).contains("coprime"));
}

#[test]
fn generator_spec_matches_tensor_product() {
    let spec = write(
        "thm56.code",
        &format!("{N9}[generator]\nf1 = x^2 + x + 1\nf2 = z + 1\n"),
    );
    let r = result(&["code", "build", "--code", &spec]);
    let t = Arc::new(build_tower(2, 1, 3, 2, 3, 3).unwrap());
    let c1 = cyclic_code(&t, &[Elem::ONE; 3]).unwrap();
    let c2 =
        skew_cyclic_code(&SkewPoly::new(t.clone(), Level::F, vec![Elem::ONE; 2]).unwrap()).unwrap();
    let pc = tensor_code(&c1, &c2).unwrap();
    assert_eq!(r["code_id"], code_id(&pc.code));
    assert_eq!(r["k"], 2);
    assert_eq!(r["cyclic_skew_cyclic"], true);

    let d = result(&["distance", "--code", &spec, "--metric", "sumrank"]);
    let oracle = pc
        .code
        .min_distance_bruteforce(Metric::SumRank, DEFAULT_BUDGET)
        .unwrap();
    assert_eq!(d["d"], oracle);
}

#[test]
fn unit_generator_is_the_full_space() {
    let spec = write("full.code", &format!("{N9}[generator]\ng = 1\n"));
    let r = result(&["code", "build", "--code", &spec]);
    assert_eq!(r["k"], 9);
    let d = result(&["distance", "--code", &spec, "--metric", "hamming"]);
    assert_eq!(d["d"], 1);
}

#[test]
fn matrix_spec_distances() {
    let spec = write("rep.code", &format!("{N9}[matrix]\n1 1 1 1 1 1 1 1 1\n"));
    assert_eq!(
        result(&["distance", "--code", &spec, "--metric", "hamming"])["d"],
        9
    );
    assert_eq!(
        result(&["distance", "--code", &spec, "--metric", "sumrank"])["d"],
        3
    );
    assert_eq!(
        result(&["distance", "--code", &spec, "--metric", "rank"])["d"],
        1
    );
}

#[test]
fn certify_output_verifies() {
    let spec = write(
        "f27.code",
        &format!("{F27}[generator]\nf1 = x + 1\nf2 = z - 1\n"),
    );
    let (code, cert) = call(&[
        "certify", "bch", "--code", &spec, "--b", "1", "--t", "1", "--delta", "2",
    ]);
    assert_eq!(code, 0, "{cert}");
    let path = write("f27.cert", &cert.to_string());
    let v = result(&["verify", "--code", &spec, "--cert", &path]);
    assert_eq!(v["valid"], true);

    // the bare certificate is accepted too
    let bare = write("f27.bare.cert", &cert["result"].to_string());
    assert_eq!(
        result(&["verify", "--code", &spec, "--cert", &bare])["valid"],
        true
    );

    let best = result(&["search", "--code", &spec]);
    let path = write("f27.best.cert", &best["best"].to_string());
    assert_eq!(
        result(&["verify", "--code", &spec, "--cert", &path])["bound"],
        best["best"]["bound"]
    );
    let d = result(&["distance", "--code", &spec]);
    assert!(best["best"]["bound"].as_u64() <= d["d"].as_u64());

    let mut forged = cert["result"].clone();
    forged["bound"] = Value::from(5);
    let path = write("f27.forged.cert", &forged.to_string());
    assert_eq!(call(&["verify", "--code", &spec, "--cert", &path]).0, 2);

    let other = write("f27.other.code", &format!("{F27}[generator]\nf1 = x + 1\n"));
    let (code, v) = call(&["verify", "--code", &other, "--cert", &bare]);
    assert_eq!(code, 2);
    assert!(error_message(&v).contains("code"));
}

#[test]
fn missing_grid_pair_is_named() {
    let spec = write(
        "f27.miss.code",
        &format!("{F27}[generator]\nf1 = x + 1\nf2 = z - 1\n"),
    );
    let (code, v) = call(&[
        "certify", "roos", "--code", &spec, "--b", "0", "--s", "1", "--delta", "2", "--k", "0",
    ]);
    assert_eq!(code, 2);
    assert!(error_message(&v).contains("(a^0, sigma^0(beta))"), "{v}");
}

#[test]
fn noncoprime_tower_is_rejected_by_checkers() {
    let spec = write(
        "n9.bch.code",
        &format!("{N9}[generator]\nf1 = x^2 + x + 1\nf2 = z + 1\n"),
    );
    let (code, v) = call(&[
        "certify", "bch", "--code", &spec, "--b", "1", "--t", "1", "--delta", "2",
    ]);
    assert_eq!(code, 2);
    assert!(error_message(&v).contains("gcd(ell, m) = 1"), "{v}");
    assert_eq!(result(&["search", "--code", &spec])["best"]["bound"], 1);
}

#[test]
fn budget_exhaustion_exits_3() {
    let spec = write(
        "budget.code",
        &format!("{N9}[generator]\nf1 = x^2 + x + 1\nf2 = z + 1\n"),
    );
    let (code, v) = call(&["distance", "--code", &spec, "--budget", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "budget");

    let out = Command::new(env!("CARGO_BIN_EXE_sumrank"))
        .args(["distance", "--code", &spec])
        .env("SUMRANK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let spec = write("bad.code", &format!("{N9}[matrix]\n1 0 1 q 0 1 1 0 1\n"));
    let (code, v) = call(&["code", "build", "--code", &spec]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(error_message(&v).contains("line 8, column 7"), "{v}");

    let (code, _) = call(&["frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(call(&["--help"]).0, 0);
    let (code, v) = call(&["code", "build", "--code", "/nonexistent/x.code"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "input");
}

#[test]
fn reports_are_deterministic_across_threads() {
    let spec = write("det.code", &format!("{F27}[generator]\nf2 = z - 1\n"));
    for args in [
        vec!["distance", "--code", &spec],
        vec!["search", "--code", &spec],
        vec!["product", "--code", &spec],
    ] {
        let mut seen = Vec::new();
        for threads in ["1", "2", "7"] {
            let mut a = args.clone();
            a.extend(["--threads", threads]);
            let (code, mut v) = call(&a);
            assert_eq!(code, 0, "{v}");
            v.as_object_mut().unwrap().remove("timings");
            seen.push(serde_json::to_string(&v).unwrap());
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn product_report_factorizes() {
    let both = write(
        "prod.code",
        &format!("{F27}[generator]\nf1 = x + 1\nf2 = z - 1\n"),
    );
    let c1 = write("prod.c1.code", &format!("{F27}[generator]\nf1 = x + 1\n"));
    let c2 = write("prod.c2.code", &format!("{F27}[generator]\nf2 = z - 1\n"));
    let r = result(&["product", "--code", &both]);
    let (dh, dr, dsr) = (
        r["dH"].as_u64().unwrap(),
        r["dR"].as_u64().unwrap(),
        r["dSR"].as_u64().unwrap(),
    );
    assert_eq!(dsr, dh * dr);
    for b in r["bounds"].as_array().unwrap() {
        assert!(b["dH_lower"].as_u64().unwrap() <= dh);
        assert!(b["dR_lower"].as_u64().unwrap() <= dr);
    }
    assert_eq!(result(&["product", "--c1", &c1, "--c2", &c2]), r);
    let (code, _) = call(&["product", "--c1", &c1]);
    assert_eq!(code, 1);
}

#[test]
fn lemmas_follow_the_seed() {
    let args = [
        "lemmas",
        "--p",
        "2",
        "--m",
        "3",
        "--h",
        "2",
        "--ell",
        "1",
        "--N",
        "3",
        "--samples",
        "50",
    ];
    let r = result(&args);
    assert_eq!(r["holds"], true);
    assert_eq!(r["samples"], 50);
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "7"]);
    assert_eq!(result(&seeded)["seed"], 7);
}

#[test]
fn text_format_is_line_oriented() {
    let spec = write("text.code", &format!("{N9}[generator]\ng = 1\n"));
    let out = run([
        "sumrank", "code", "build", "--code", &spec, "--format", "text",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l.trim() == "k: 9"));
    assert!(serde_json::from_str::<Value>(&out.stdout).is_err());
}
