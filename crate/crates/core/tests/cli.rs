use serde_json::Value;
use taffine::cli::run;
use taffine::{Dims, Weight};

fn json(args: &[&str]) -> (i32, Value) {
    let o = run(args.iter().copied());
    (o.status, serde_json::from_str(&o.body).unwrap_or(Value::Null))
}

fn literals(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) if s.contains('e') || s.contains('f') || s.contains('d') || s == "0" => {
            out.push(s.clone())
        }
        Value::Array(a) => a.iter().for_each(|x| literals(x, out)),
        Value::Object(m) => m.values().for_each(|x| literals(x, out)),
        _ => {}
    }
}

#[test]
fn roots_window_zero() {
    let (s, v) = json(&["roots", "--family", "A2MIX", "--k", "1", "--l", "1", "--window", "0"]);
    assert_eq!(s, 0);
    assert_eq!(v.as_array().unwrap().len(), 11);
}

#[test]
fn emitted_literals_reparse() {
    let (_, v) = json(&["roots", "--family", "D2", "--k", "2", "--l", "2", "--window", "3"]);
    let d = Dims::new(2, 2);
    let mut lits = Vec::new();
    literals(&v, &mut lits);
    assert!(lits.len() > 50);
    for lit in lits {
        let w = Weight::parse(&lit, d).unwrap();
        assert_eq!(w.to_string(), lit);
        assert_eq!(Weight::parse(&w.to_string(), d).unwrap(), w);
    }
}

#[test]
fn byte_identical_reruns() {
    let cmds: [&[&str]; 4] = [
        &["roots", "--family", "A4", "--k", "2", "--l", "1", "--window", "4"],
        &["parabolic", "--family", "A2ODD", "--k", "2", "--l", "1", "--functional", r#"{"e1":"1/2","d":1}"#],
        &["verify-example", "--k", "2", "--zeta", "1/2", "--window", "3"],
        &["subsystem", "--family", "A2MIX", "--k", "2", "--l", "2", "--index", "2", "--window", "3"],
    ];
    for c in cmds {
        let a = run(c.iter().copied());
        let b = run(c.iter().copied());
        assert_eq!(a.status, 0, "{}", a.body);
        assert_eq!(a.body, b.body);
    }
}

#[test]
fn classify_kind() {
    let (s, v) = json(&["classify", "--family", "D2", "--k", "2", "--l", "1", "--root", "e1+f1"]);
    assert_eq!(s, 0);
    assert_eq!(v["kind"], "nonsingularx");
    let (_, v) = json(&["classify", "--family", "A2MIX", "--k", "2", "--l", "1", "--root", "2e1 + 3d"]);
    assert_eq!(v["kind"], "realx");
    assert_eq!(v["progression"]["r"], 2);
    assert_eq!(v["progression"]["k"], 1);
}

#[test]
fn salpha_progression() {
    let (_, v) = json(&["salpha", "--family", "A2MIX", "--k", "1", "--l", "1", "--root", "f1"]);
    assert_eq!((v["r"].as_u64(), v["k"].as_u64()), (Some(1), Some(0)));
}

#[test]
fn example_report_passes() {
    let (s, v) = json(&["verify-example", "--k", "2", "--zeta", "1/2", "--window", "6"]);
    assert_eq!(s, 0);
    let steps = v["steps"].as_array().unwrap();
    assert!(steps.len() >= 8);
    for st in steps {
        assert_eq!(st["pass"], true, "{st}");
    }
}

#[test]
fn levi_and_recognize() {
    let (_, v) = json(&["levi", "--family", "A2ODD", "--k", "3", "--l", "1", "--functional", r#"{"d":1}"#, "--window", "2"]);
    assert_eq!(v["type"], "D(3,1)");
    let (_, v) = json(&["recognize", "--k", "2", "--l", "1", "--roots", r#"["2f1","-2f1","e2+f1","-e2-f1","e2-f1","-e2+f1"]"#]);
    assert_eq!(v["type"], "C(2)");
}

#[test]
fn support_queries() {
    let sup = r#"{"pieces":[{"base":"0","zgens":["2f1"],"ngens":["-d"]}]}"#;
    let (s, v) = json(&["support", "--k", "1", "--l", "1", "--support", sup, "--alpha", "2f1 + 2d", "--root", "4f1 - 3d"]);
    assert_eq!(s, 0, "{v}");
    assert_eq!(v["member"], true);
    assert_eq!(v["in_B"], true);
    assert_eq!(v["in_C"], false);
    let (_, v) = json(&["support", "--k", "1", "--l", "1", "--support", sup, "--alpha", "2f1 - 2d"]);
    assert_eq!(v["in_B"], false);
    assert_eq!(v["in_C"], true);
}

#[test]
fn tightness_default_labeling() {
    let (_, v) = json(&["tightness", "--family", "A2ODD", "--k", "2", "--l", "1", "--index", "1"]);
    assert_eq!(v["tightness"], "hybrid");
    assert_eq!(v["direction"], 1);
    assert_eq!(v["quasi_integrable"], 2);
    let (s, _) = json(&["tightness", "--family", "D2", "--k", "2", "--l", "1", "--index", "1"]);
    assert_eq!(s, 1);
}

#[test]
fn closed_checks() {
    let (_, v) = json(&["closed", "--family", "A2ODD", "--k", "2", "--l", "1", "--index", "2", "--window", "3"]);
    assert_eq!(v["closed"], true);
    let (_, v) = json(&["closed", "--family", "A2ODD", "--k", "2", "--l", "1", "--roots", r#"["e1-e2","e2-f1"]"#, "--window", "1"]);
    assert_eq!(v["closed"], false);
}

#[test]
fn validation_errors() {
    for args in [
        &["roots", "--family", "A2MIX", "--k", "1"][..],
        &["roots", "--family", "A2MIX", "--k", "1", "--l", "1", "--bogus"],
        &["classify", "--family", "A2MIX", "--k", "1", "--l", "1", "--root", "e1 +* f1"],
        &["classify", "--family", "A2MIX", "--k", "1", "--l", "1", "--root", "e3"],
        &["roots", "--family", "A2ODD", "--k", "1", "--l", "1"],
        &["verify-example", "--k", "1"],
        &["verify-example", "--zeta", "2"],
        &["triangular", "--family", "A4", "--k", "1", "--l", "1", "--functional", r#"{"e9":1}"#],
    ] {
        let (s, v) = json(args);
        assert_eq!(s, 1, "{args:?}");
        assert!(v["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn indeterminate_exit_code() {
    // dependent generators and a target out of reach of the bound
    let sup = r#"{"pieces":[{"base":"0","ngens":["e1","2e1","-e1"]}]}"#;
    let o = run(["support", "--k", "1", "--l", "1", "--support", sup, "--root", "1/2e1 + f1", "--bound", "2"]);
    assert!(o.status == 0 || o.status == 2, "{}", o.body);
}
