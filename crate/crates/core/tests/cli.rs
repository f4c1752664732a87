use foursq::cli::{run_args, CSV_HEADER, EXIT_DOMAIN, EXIT_OK};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_args(std::iter::once("foursq").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {out}");
    serde_json::from_str(out.trim()).unwrap()
}

fn error_kind(args: &[&str]) -> String {
    let (code, out) = run(args);
    assert_eq!(code, EXIT_DOMAIN, "{args:?}: {out}");
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["message"].is_string());
    v["error"].as_str().unwrap().to_owned()
}

#[test]
fn decompose_sqrt17() {
    let v = json(&["decompose", "--d", "17", "--m", "2+1*w"]);
    assert_eq!(v["r_Q"], 0);
    assert_eq!(v["a_E"], "4");
    assert_eq!(v["a_C"], "-4");
    assert_eq!(v["locally_represented"], true);
}

#[test]
fn counts() {
    assert_eq!(json(&["count", "--d", "5", "--m", "3"])["count"], 80);
    assert_eq!(json(&["count", "--d", "2", "--m", "5+2*w"])["count"], 144);
    let v = json(&["count", "--d", "17", "--m", "1", "--witnesses"]);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 8);
}

#[test]
fn universal_check() {
    let v = json(&["universal-check", "--d", "7"]);
    assert_eq!(v["universal"], false);
    assert_eq!(v["witness"], "3+1*w");
    assert_eq!(v["r_Q"], 0);
    assert_eq!(json(&["universal-check", "--d", "5"])["universal"], true);
}

#[test]
fn sqrt5_csv_table_has_no_cusp_part() {
    let (code, out) = run(&["--format", "csv", "table", "--d", "5", "--norm-max", "40"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header, CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(!rows.is_empty());
    for r in &rows {
        assert_eq!(&r[4], "0");
        assert_eq!(&r[2], &r[3]);
    }
}

#[test]
fn table_is_deterministic() {
    let args = ["--format", "csv", "table", "--d", "13", "--norm-max", "30", "--orbits"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn density_and_lvalue() {
    let v = json(&["density", "--d", "13", "--m", "1", "--p", "3"]);
    assert_eq!(v["primes"][0]["engine"]["beta"], "8/9");
    assert_eq!(v["primes"][1]["closed_form"], "8/9");
    let v = json(&["lvalue", "--D", "5"]);
    assert_eq!(v["L_minus_1"], "-2/5");
    assert!((v["L2_numeric"].as_f64().unwrap() - 0.7062114).abs() < 1e-6);
    let s = json(&["lvalue", "--d", "5", "--method", "series"]);
    assert!((s["L2_numeric"].as_f64().unwrap() - v["L2_numeric"].as_f64().unwrap()).abs() < 1e-8);
}

#[test]
fn eisenstein_routes_agree() {
    let v = json(&["eisenstein", "--d", "17", "--m", "2"]);
    assert_eq!(v["a_e"], "12");
    assert!((v["a_E_numeric"].as_f64().unwrap() - 12.0).abs() < 1e-9);
}

#[test]
fn factor_reports_primes() {
    let v = json(&["factor", "--d", "13", "--p", "3"]);
    let primes = v["primes"].as_array().unwrap();
    assert_eq!(primes.len(), 2);
    assert!(primes.iter().all(|p| p["split_type"] == "split"));
    let v = json(&["factor", "--d", "2", "--p", "2"]);
    assert_eq!(v["primes"][0]["e"], 2);
}

#[test]
fn text_format() {
    let (code, out) = run(&["--format", "text", "decompose", "--d", "3", "--m", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "a_C: 4"));
}

#[test]
fn domain_errors() {
    assert_eq!(error_kind(&["count", "--d", "5", "--m", "1-1*w"]), "not_totally_positive");
    assert_eq!(error_kind(&["count", "--d", "5", "--m", "x+"]), "usage");
    assert_eq!(error_kind(&["factor", "--d", "4", "--p", "3"]), "field");
    assert_eq!(error_kind(&["frobnicate"]), "usage");
}

#[test]
fn eigenform_fit_from_file() {
    // a CSV whose single form is a_C itself fits with constant 1
    let dir = std::env::temp_dir().join(format!("foursq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("forms.csv");
    std::fs::write(&path, "ideal-norm,ideal-label,coefficient\n1,1,4\n4,2,-4\n").unwrap();
    let v = json(&["table", "--d", "3", "--norm-max", "4", "--orbits", "--eigenform", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(v.to_string().contains("constants"), "{v}");
}

#[test]
fn verify_lemmas_passes() {
    for d in ["2", "5", "17"] {
        let v = json(&["verify-lemmas", "--d", d, "--norm-max", "20"]);
        assert_eq!(v["failed"], 0, "d={d}");
        assert!(v["passed"].as_u64().unwrap() > 0);
    }
}
