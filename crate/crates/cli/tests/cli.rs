use lagstab::scalar::parse_rational;
use lagstab::Rational;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["lagstab"];
    full.extend_from_slice(args);
    let code = lagstab_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn clifford_analysis() {
    let (code, v) = json(&["analyze", "--simplex", "1/3,1/3,1/3", "--t", "1/2", "--arithmetic", "exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "CertifiedStable");
    assert_eq!(v["rigid"], true);
    assert_eq!(v["arithmetic_track"], "exact");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "arithmetic_track",
            "enumeration_bound",
            "modes_checked",
            "null_modes",
            "orbit",
            "rigid",
            "tool_version",
            "verdict",
            "volume_minimizing",
            "witness"
        ]
    );
}

#[test]
fn witness_analysis_exits_10() {
    let (code, v) = json(&["analyze", "--simplex", "1/100,99/200,99/200", "--t", "1/2"]);
    assert_eq!(code, 10);
    assert_eq!(v["verdict"], "CertifiedUnstable");
    assert_eq!(v["witness"]["mode"], serde_json::json!([-1, 1, 1]));
    assert_eq!(v["witness"]["q"], "-1800200/9801");
    assert_eq!(v["volume_minimizing"], "No_UnstableWitness");
}

#[test]
fn float_radii_default_to_float() {
    let (code, v) = json(&["analyze", "--radii", "1,1", "--arithmetic", "float"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "NumericallyStable");
    let (_, v) = json(&["analyze", "--radii", "1.0,1.5"]);
    assert_eq!(v["arithmetic_track"], "float");
    let (_, v) = json(&["analyze", "--radii", "1,3/2"]);
    assert_eq!(v["arithmetic_track"], "exact");
}

#[test]
fn json_round_trips() {
    let (_, out, _) = run(&["analyze", "--simplex", "1/5,3/10,1/2", "--t", "2/3"]);
    let parsed: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap()), out);
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = run(&["analyze", "--simplex", "1/2,x", "--t", "1/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("`x`"), "{err}");
    assert_eq!(run(&["analyze", "--radii", "1,1", "--simplex", "1/2,1/2"]).0, 2);
    assert_eq!(run(&["analyze", "--simplex", "1/2,1/3", "--t", "1/2"]).0, 2);
    assert_eq!(run(&["analyze", "--simplex", "1/2,1/2", "--t", "1"]).0, 2);
    assert_eq!(run(&["analyze", "--simplex", "1/2,1/2", "--t", "1/2", "--bound", "1"]).0, 2);
    assert_eq!(run(&["analyze"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn bound_override_enlarges() {
    let (code, v) = json(&["analyze", "--simplex", "1/2,1/2", "--t", "1/2", "--bound", "40"]);
    assert_eq!(code, 0);
    assert_eq!(v["enumeration_bound"], "40");
}

#[test]
fn csv_and_text_outputs() {
    let (_, out, _) = run(&["analyze", "--simplex", "1/100,99/200,99/200", "--t", "1/2", "--output", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,t,s_1,s_2,s_3,verdict,min_Q_num,min_Q_den,witness");
    assert_eq!(lines[1], "3,1/2,1/100,99/200,99/200,CertifiedUnstable,-1800200,9801,-1;1;1");
    let (_, out, _) = run(&["analyze", "--radii", "1,1", "--output", "text"]);
    assert!(out.contains("CertifiedStable"));
}

#[test]
fn oracle_records() {
    let (code, v) = json(&["oracle", "--simplex", "1/100,99/200,99/200", "--t", "1/2", "--mode", "-1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["q_form"], "-1800200/9801");
    assert_eq!(v["spectral"], "-1800200/9801");
    let quad = v["quadrature"].as_f64().unwrap();
    assert!((quad + 1800200.0 / 9801.0).abs() < 1e-10 * 184.0);
    let (code, v) = json(&["oracle", "--simplex", "1/5,4/5", "--t", "1/3", "--mode", "1,-1", "--phase", "sin"]);
    assert_eq!(code, 0);
    assert_eq!(v["q_form"], "0");
    assert_eq!(v["spectral"], "0");
    assert!(v["quadrature"].as_f64().unwrap().abs() < 1e-10 * v["scale"].as_f64().unwrap());
    let (code, _, err) = run(&["oracle", "--radii", "1,1", "--mode", "3,0", "--grid", "8"]);
    assert_eq!(code, 2);
    assert!(err.contains("grid"));
}

#[test]
fn volume_records() {
    let (code, v) = json(&["volume", "--radii", "1,1"]);
    assert_eq!(code, 0);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((v["hyperbolic"].as_f64().unwrap() - 4.0 * pi2 * 3f64.sqrt()).abs() < 1e-12);
    assert!((v["euclidean"].as_f64().unwrap() - 4.0 * pi2).abs() < 1e-12);
    assert!((v["ratio"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-14);
    assert_eq!(v["determinant"], "3");
    let (_, v) = json(&["volume", "--radii", "1"]);
    let expected = 2.0 * std::f64::consts::PI * 2f64.sqrt();
    assert!((v["hyperbolic"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn one_dimensional_sweep() {
    let (code, out, _) = run(&["sweep", "--n", "1", "--t-steps", "9", "--output", "json"]);
    assert_eq!(code, 0);
    let recs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 9);
    for r in recs {
        assert_eq!(r["verdict"], "CertifiedStable");
        assert_eq!(r["min_q"], "0");
        assert!(r["witness"].is_null());
    }
}

fn parse(tok: &str) -> Rational {
    parse_rational(tok).unwrap()
}

#[test]
fn three_dimensional_sweep_matches_triple_inequality() {
    let (code, out, _) = run(&["sweep", "--n", "3", "--resolution", "30", "--t", "1/2"]);
    assert_eq!(code, 0);
    let t = parse("1/2");
    let mut unstable = 0;
    for line in out.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let s: Vec<Rational> = cols[2..5].iter().map(|x| parse(x)).collect();
        let triple = (0..3).any(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            s[i] < t.clone() * s[j].clone() * s[k].clone()
        });
        let is_unstable = cols[5] == "CertifiedUnstable";
        assert_eq!(is_unstable, triple, "{line}");
        unstable += is_unstable as usize;
    }
    assert!(unstable > 0);
}

#[test]
fn sweep_rejects_degenerate_grids() {
    assert_eq!(run(&["sweep", "--n", "3", "--resolution", "2"]).0, 2);
    assert_eq!(run(&["sweep", "--n", "2", "--resolution", "1"]).0, 2);
    assert_eq!(run(&["sweep", "--n", "2", "--t", "0"]).0, 2);
}
