use credal_web::{compare_schemes_json, contextual_rates_json, decay_curves_json};
use serde_json::Value;

const TARGET: &str = r#"{"frame": ["a","h","r"], "masses": [{"set": ["a"], "mass": 0.5}, {"set": ["r"], "mass": 0.5}]}"#;
const AGEING: &str = r#"{"frame": ["w1","w2","w3"], "masses": [
    {"set": ["w1"], "mass": 0.3}, {"set": ["w2"], "mass": 0.2}, {"set": ["w1","w2"], "mass": 0.2},
    {"set": ["w3"], "mass": 0.2}, {"set": "*", "mass": 0.1}]}"#;
const DECAY_C2: &str = r#"{"decay": [{"set": ["w1"], "half_life_s": 5}, {"set": ["w2"], "half_life_s": 4}, {"set": ["w3"], "half_life_s": 15}]}"#;
const DECAY_C1: &str = r#"{"decay": [{"set": ["w1"], "half_life_s": 1}, {"set": ["w2"], "half_life_s": 4}, {"set": ["w3"], "half_life_s": 15}]}"#;

fn row<'a>(v: &'a Value, label: &str) -> &'a Value {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["label"] == label)
        .unwrap()
}

#[test]
fn comparison_table() {
    let out: Value = serde_json::from_str(
        &compare_schemes_json(
            TARGET,
            r#"{"contexts": [{"set": ["h","r"], "alpha": 0.4}]}"#,
        )
        .unwrap(),
    )
    .unwrap();
    let r = row(&out, "{r}");
    assert_eq!(r["input"], 0.5);
    for scheme in ["conservative", "proportional", "optimistic"] {
        assert!((r[scheme].as_f64().unwrap() - 0.3).abs() < 1e-12);
    }
    // {a} ∪ {h,r} = Ω and {r} ∪ {h,r} = {h,r}
    assert!((row(&out, "Ω")["contextual"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!((row(&out, "{h,r}")["contextual"].as_f64().unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn comparison_reports_document_errors() {
    let err = compare_schemes_json(TARGET, r#"{"contexts": [{"set": ["x"], "alpha": 0.4}]}"#)
        .unwrap_err();
    assert!(err.contains("contexts[0].set"), "{err}");
    assert!(compare_schemes_json("{", "{}")
        .unwrap_err()
        .starts_with("mass: line 1"));
}

#[test]
fn curves_start_at_the_input_and_halve() {
    let out: Value = serde_json::from_str(
        &decay_curves_json(AGEING, DECAY_C2, 8.0, 8, "conservative", "postulate").unwrap(),
    )
    .unwrap();
    let times = out["times"].as_array().unwrap();
    assert_eq!(times.len(), 9);
    let w2 = out["series"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["label"] == "{w2}")
        .unwrap();
    let values: Vec<f64> = w2["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!((values[0] - 0.2).abs() < 1e-15);
    // half-life of w2 is 4 s
    assert!((values[4] - 0.1).abs() < 1e-12);
    assert!((values[8] - 0.05).abs() < 1e-12);
}

#[test]
fn infeasible_contextual_points_are_null() {
    let out: Value = serde_json::from_str(
        &decay_curves_json(AGEING, DECAY_C1, 4.0, 4, "contextual", "postulate").unwrap(),
    )
    .unwrap();
    let w1 = out["series"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["label"] == "{w1}")
        .unwrap();
    let values = w1["values"].as_array().unwrap();
    assert!((values[0].as_f64().unwrap() - 0.3).abs() < 1e-15);
    assert!(values[4].is_null());
}

#[test]
fn curve_arguments_are_checked() {
    assert!(decay_curves_json(AGEING, DECAY_C2, 0.0, 8, "conservative", "postulate").is_err());
    assert!(decay_curves_json(AGEING, DECAY_C2, 4.0, 0, "conservative", "postulate").is_err());
    assert!(decay_curves_json(AGEING, DECAY_C2, 4.0, 8, "bogus", "postulate").is_err());
    assert!(decay_curves_json(AGEING, DECAY_C2, 4.0, 8, "optimistic", "nope").is_err());
}

#[test]
fn contextual_rates_match_the_worked_cases() {
    let c1: Value =
        serde_json::from_str(&contextual_rates_json("[1, 4, 15]", 4.0).unwrap()).unwrap();
    assert_eq!(c1["feasible"], false);
    assert!((c1["alpha"][0].as_f64().unwrap() + 1.5787).abs() < 1e-3);
    let c2: Value =
        serde_json::from_str(&contextual_rates_json("[5, 4, 15]", 4.0).unwrap()).unwrap();
    assert_eq!(c2["feasible"], true);
    let alpha: Vec<f64> = c2["alpha"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (a, e) in alpha.iter().zip([0.1493, 0.0228, 0.4122]) {
        assert!((a - e).abs() < 1e-3);
    }
    assert!(contextual_rates_json("[1, -4]", 4.0).is_err());
    assert!(contextual_rates_json("[]", 4.0).is_err());
}
