//! Golden outputs of the command line. Set `UPDATE_GOLDEN=1` to rewrite
//! the files under `tests/golden/`.

use std::path::PathBuf;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["lexrank".to_string()];
    full.extend(args.iter().map(|a| {
        if a.starts_with("fixtures/") || a.starts_with("tests/") {
            root().join(a).display().to_string()
        } else {
            a.to_string()
        }
    }));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lexrank::cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str], code: i32) -> String {
    let (c, out, err) = run(args);
    assert_eq!(c, code, "{name}: stdout {out} stderr {err}");
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(out, want, "{name} differs from its golden file");
    out
}

#[test]
fn synth_intro() {
    let out = golden("synth_intro_bms_rat.json", &["synth", "fixtures/intro.mlc", "--class", "bms", "--domain", "rat"], 0);
    assert!(out.contains(r#""dimension":2"#));
    golden("synth_intro_bms_int.json", &["synth", "fixtures/intro.mlc", "--class", "bms", "--domain", "int"], 0);
    golden("synth_intro_lrf.json", &["synth", "fixtures/intro.mlc", "--class", "lrf"], 1);
}

#[test]
fn dimension_commands() {
    let out = golden("dimension_dimgap_adfg.json", &["dimension", "fixtures/dimgap.mlc", "--class", "adfg", "--minimize"], 0);
    assert!(out.contains(r#""min_dimension":5"#));
    golden("dimension_dimgap_bms_at_most_2.json", &["dimension", "fixtures/dimgap.mlc", "--class", "bms", "--at-most", "2"], 1);
    golden("dimension_dimgap_bms_at_most_3.json", &["dimension", "fixtures/dimgap.mlc", "--class", "bms", "--at-most", "3"], 0);
}

#[test]
fn check_candidates() {
    let cand = "tests/data/intro_xy.json";
    golden("check_intro_bms.json", &["check", "fixtures/intro.mlc", "--candidate", cand, "--class", "bms"], 0);
    golden("check_intro_bg.json", &["check", "fixtures/intro.mlc", "--candidate", cand, "--class", "bg"], 1);
    golden("check_intro_adfg.json", &["check", "fixtures/intro.mlc", "--candidate", cand, "--class", "adfg"], 1);
}

#[test]
fn generators() {
    let out = golden("gen_maxdim_2.mlc", &["gen", "maxdim", "2"], 0);
    assert_eq!(lexrank::format::parse_loop(&out).unwrap(), lexrank::reductions::maxdim_family(2));
    golden("gen_intro.mlc", &["gen", "intro"], 0);
    golden("gen_dimgap.mlc", &["gen", "dimgap"], 0);
    golden("gen_fano.mlc", &["gen", "hypergraph", "tests/data/fano.hg", "--colors", "2"], 0);
    golden("gen_small_qbf.mlc", &["gen", "qbf", "tests/data/small.qbf"], 0);
    golden("gen_small_qbf_pad3.mlc", &["gen", "qbf", "tests/data/small.qbf", "--pad", "3"], 0);
}

#[test]
fn witness_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("lexrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases: [(&str, &[&str]); 4] = [
        ("witness_unbounded_bms.json", &["--kind", "bms-llrf"]),
        ("witness_unbounded_qlrf.json", &["--kind", "qlrf", "--target", "2"]),
        ("witness_intro_bg2.json", &["--kind", "bg-dim", "--dim", "2"]),
        ("witness_intro_adfg3.json", &["--kind", "adfg-dim", "--dim", "3"]),
    ];
    for (name, flags) in cases {
        let file = if name.contains("intro") { "fixtures/intro.mlc" } else { "tests/data/unbounded.mlc" };
        let mut args = vec!["witness", "build", file];
        args.extend_from_slice(flags);
        let out = golden(name, &args, 0);
        let wpath = dir.join(name);
        std::fs::write(&wpath, &out).unwrap();
        let w = wpath.display().to_string();
        let (code, verdict, _) = run(&["witness", "check", file, &w]);
        assert_eq!((code, verdict.trim()), (0, r#"{"verdict":"accepted"}"#), "{name}");
    }
    // a loop with a BMS-LLRF has no such witness
    let (code, out, _) = run(&["witness", "build", "fixtures/intro.mlc", "--kind", "bms-llrf"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), r#"{"kind":"bms-llrf","status":"none"}"#);
    // the kind flag must match the file
    let w = dir.join("witness_unbounded_bms.json").display().to_string();
    let (code, _, err) = run(&["witness", "check", "tests/data/unbounded.mlc", &w, "--kind", "qlrf"]);
    assert_eq!(code, 2);
    assert!(err.contains(r#""code":"invalid""#));
}

#[test]
fn errors_are_json_on_stderr() {
    let (code, out, err) = run(&["synth", "tests/data/missing.mlc", "--class", "bms"]);
    assert_eq!((code, out.as_str()), (2, ""));
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["code"], "io");
    let (code, _, err) = run(&["synth", "--class", "nope", "fixtures/intro.mlc"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["code"], "usage");
    let (code, _, err) = run(&["gen", "qbf", "tests/data/small.qbf", "--pad", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("lexrank-cli-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.mlc");
    std::fs::write(&f, "vars x\npath { x'' <= x }\n").unwrap();
    let (code, _, err) = run(&["synth", &f.display().to_string(), "--class", "lrf"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!((v["code"].as_str(), v["line"].as_u64()), (Some("parse"), Some(2)));
}
