use std::path::PathBuf;
use std::process::{Command, Output};

use credal::doc::parse_mass;
use credal::MassFunction;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn credal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_credal"))
        .args(args)
        .env_remove("CREDAL_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn discount_table_for_the_three_schemes() {
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &data("context_hr.json"),
        "--scheme",
        "c,p,o",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let expected = "\
subset         m  conservative  proportional  optimistic
∅       0.000000      0.000000      0.000000    0.000000
{a}     0.500000      0.500000      0.500000    0.500000
{r}     0.500000      0.300000      0.300000    0.300000
Ω       0.000000      0.200000      0.200000    0.200000
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn contextual_column() {
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &data("context_a.json"),
        "--scheme",
        "contextual",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "subset,m,contextual\n∅,0.000000,0.000000\n{a},0.500000,0.500000\n{r},0.500000,0.300000\n\"{a,r}\",0.000000,0.200000\nΩ,0.000000,0.000000\n"
    );
}

#[test]
fn scheme_list_validation() {
    for list in ["", " , ", "bogus", "c,bogus"] {
        let out = credal(&[
            "discount",
            "--mass",
            &data("target.json"),
            "--context",
            &data("context_hr.json"),
            "--scheme",
            list,
        ]);
        assert_eq!(out.status.code(), Some(2), "scheme list {list:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn classical_needs_a_frame_wide_context() {
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &data("context_hr.json"),
        "--scheme",
        "classical",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("classical"));

    let dir = tempfile::tempdir().unwrap();
    let ctx = write_temp(
        &dir,
        "ctx.json",
        r#"{"contexts": [{"set": "*", "alpha": 0.25}]}"#,
    );
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &ctx,
        "--scheme",
        "classical",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Ω       0.000000   0.250000"));
}

#[test]
fn document_diagnostics_name_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "{\n  \"frame\": [\"a\"],\n  \"masses\": [ oops ]\n}",
            "line 3",
        ),
        (
            r#"{"frame": ["a","b"], "masses": [{"set": ["a"], "mass": 0.7}]}"#,
            "masses",
        ),
        (
            r#"{"frame": ["a","b"], "masses": [{"set": ["z"], "mass": 1.0}]}"#,
            "masses[0].set",
        ),
        (
            r#"{"frame": ["a","b"], "masses": [{"set": ["a"], "mass": 1.5}]}"#,
            "masses[0].mass",
        ),
        (r#"{"frame": ["a","a"], "masses": []}"#, "frame"),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let mass = write_temp(&dir, &format!("m{i}.json"), body);
        let out = credal(&["inspect", "--mass", &mass]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        assert!(
            stderr(&out).contains(needle),
            "{} lacks {needle}",
            stderr(&out)
        );
    }

    let ctx = write_temp(
        &dir,
        "ctx.json",
        r#"{"contexts": [{"set": ["h"], "alpha": 0.2}, {"set": ["a"], "alpha": 1.2}]}"#,
    );
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &ctx,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("contexts[1].alpha"));

    let decay = write_temp(
        &dir,
        "decay.json",
        r#"{"decay": [{"set": ["w1"], "half_life_s": 1, "lambda": 2}]}"#,
    );
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &decay,
        "--time",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("decay[0]"));

    let out = credal(&[
        "inspect",
        "--mass",
        &dir.path().join("missing.json").to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_decay_reports_raw_rates() {
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c1.json"),
        "--time",
        "4",
        "--scheme",
        "contextual",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("[-1.5787, 0.6777, 0.8061]"),
        "{}",
        stderr(&out)
    );
    assert!(stdout(&out).contains("kappa: [0.0625, 0.5000, 0.8312]"));
}

#[test]
fn generalized_route_rejects_vanishing_implicability() {
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &data("context_a.json"),
        "--scheme",
        "generalized",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("generalized: implicability vanishes"));
}

#[test]
fn temporal_prints_decay_vectors() {
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c2.json"),
        "--time",
        "4",
        "--scheme",
        "c,contextual",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for line in [
        "lambda: [0.1386, 0.1733, 0.0462]",
        "kappa: [0.5743, 0.5000, 0.8312]",
        "alpha (postulate): [0.4257, 0.5000, 0.1688]",
        "alpha (contextual): [0.1493, 0.0228, 0.4122]",
        "{w1,w3}  0.000000      0.000000    0.150028",
    ] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn paper_table_mode_uses_kappa_as_rate() {
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c1.json"),
        "--time",
        "4",
        "--scheme",
        "o",
        "--alpha-mode",
        "paper-table",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("alpha (paper-table): [0.0625, 0.5000, 0.8312]"));
    let bad = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c1.json"),
        "--time",
        "4",
        "--alpha-mode",
        "nope",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn zero_age_echoes_the_input() {
    let input = parse_mass(&std::fs::read_to_string(data("ageing.json")).unwrap()).unwrap();
    for scheme in ["conservative", "proportional", "optimistic", "contextual"] {
        let out = credal(&[
            "temporal",
            "--mass",
            &data("ageing.json"),
            "--decay",
            &data("decay_c1.json"),
            "--time",
            "0",
            "--scheme",
            scheme,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(parse_mass(&stdout(&out)).unwrap(), input, "{scheme}");
    }
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c1.json"),
        "--time",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let path = path.to_string_lossy();
    let out = credal(&[
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c2.json"),
        "--time",
        "4",
        "--scheme",
        "p",
        "--format",
        "json",
        "--out",
        &path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&*path).unwrap();
    let reloaded = parse_mass(&written).unwrap();

    // reload the document and push it through the CLI once more
    let again = credal(&["inspect", "--mass", &path, "--format", "json"]);
    assert_eq!(again.status.code(), Some(0));

    let m = parse_mass(&std::fs::read_to_string(data("ageing.json")).unwrap()).unwrap();
    let spec = credal::doc::parse_decay(
        &std::fs::read_to_string(data("decay_c2.json")).unwrap(),
        m.frame(),
    )
    .unwrap();
    let direct = credal::temporal_discount(
        &m,
        &spec,
        4.0,
        credal::Scheme::Proportional,
        credal::AlphaMode::Postulate,
    )
    .unwrap();
    assert_eq!(reloaded, direct);
}

#[test]
fn several_json_columns_form_an_array() {
    let out = credal(&[
        "discount",
        "--mass",
        &data("target.json"),
        "--context",
        &data("context_hr.json"),
        "--format",
        "json",
    ]);
    let docs: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let labels: Vec<&str> = docs.iter().map(|d| d["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["conservative", "proportional", "optimistic"]);
    for d in &docs {
        let m: MassFunction = parse_mass(&d.to_string()).unwrap();
        assert!((m.total() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rendering_is_deterministic() {
    let args = [
        "temporal",
        "--mass",
        &data("ageing.json"),
        "--decay",
        &data("decay_c2.json"),
        "--time",
        "2.5",
        "--scheme",
        "c,p,o,contextual",
    ];
    let first = credal(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, credal(&args).stdout);
}

#[test]
fn combine_two_documents() {
    let out = credal(&[
        "combine",
        "--mass",
        &data("target.json"),
        "--mass",
        &data("target.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m = parse_mass(&stdout(&out)).unwrap();
    let f = m.frame();
    assert!((m.mass(f.subset(["a", "r"]).unwrap()) - 0.5).abs() < 1e-15);
    assert!((m.mass(f.subset(["a"]).unwrap()) - 0.25).abs() < 1e-15);

    let one = credal(&["combine", "--mass", &data("target.json")]);
    assert_eq!(one.status.code(), Some(2));
    let mismatch = credal(&[
        "combine",
        "--mass",
        &data("target.json"),
        "--mass",
        &data("ageing.json"),
    ]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(stderr(&mismatch).contains("different frames"));
}

#[test]
fn inspect_lists_belief_and_implicability() {
    let dir = tempfile::tempdir().unwrap();
    let mass = write_temp(
        &dir,
        "m.json",
        r#"{"frame": ["a","b"], "masses": [{"set": [], "mass": 0.2}, {"set": ["a"], "mass": 0.5}, {"set": "*", "mass": 0.3}]}"#,
    );
    let out = credal(&["inspect", "--mass", &mass, "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "subset,mass,belief,implicability\n∅,0.200000,0.000000,0.200000\n{a},0.500000,0.500000,0.700000\n{b},0.000000,0.000000,0.200000\nΩ,0.300000,0.800000,1.000000\n"
    );
}

#[test]
fn paper_passes_and_catches_perturbations() {
    let out = credal(&["paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains(" 0 fail"));

    for cell in ["aging1.c.W", "decay.alpha2[1]", "targets.o.r"] {
        let out = credal(&["paper", "--perturb", cell]);
        assert_eq!(out.status.code(), Some(1), "{cell}");
        let text = stdout(&out);
        let diff = text.split("mismatches:").nth(1).expect("diff section");
        assert!(diff.contains(cell));
        assert_eq!(diff.lines().filter(|l| l.starts_with("  ")).count(), 1);
    }

    let unknown = credal(&["paper", "--perturb", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn paper_csv_and_tolerance_override() {
    let out = credal(&["paper", "--format", "csv", "--perturb", "aging2.p.w1w2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("id,status,expected,actual,deviation\n"));
    let failing: Vec<&str> = text.lines().filter(|l| l.contains(",FAIL,")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("aging2.p.w1w2,"));

    let strict = Command::new(env!("CARGO_BIN_EXE_credal"))
        .arg("paper")
        .env("CREDAL_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    let loose = Command::new(env!("CARGO_BIN_EXE_credal"))
        .args(["paper", "--perturb", "aging1.c.W"])
        .env("CREDAL_TOL", "0.05")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_credal"))
        .arg("paper")
        .env("CREDAL_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
