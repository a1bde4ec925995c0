use std::f64::consts::PI;
use std::process::{Command, Output};

use anyon_core::bounds::{
    linear_lower, TAG_ALPHA_N, TAG_APRIORI, TAG_LINEAR, TAG_QUADRATIC, TAG_UPPER_N,
};
use anyon_core::Alpha;
use serde_json::Value;

fn anyon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anyon"))
        .args(args)
        .output()
        .expect("run anyon")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn bounds_csv_for_ten_particles() {
    let o = anyon(&[
        "bounds", "--alpha", "0.1", "--n", "10", "--bc", "neumann", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "alpha,n,bc,source,direction,value,valid,note"
    );
    let rows = csv_rows(&text);
    let sources: Vec<&str> = rows.iter().map(|r| r[3].as_str()).collect();
    assert_eq!(
        sources,
        [
            TAG_ALPHA_N,
            TAG_APRIORI,
            TAG_LINEAR,
            TAG_QUADRATIC,
            TAG_UPPER_N
        ]
    );
    let linear: f64 = rows[2][5].parse().unwrap();
    assert_eq!(
        linear,
        linear_lower(10, &Alpha::new(0.1).unwrap()).unwrap().energy
    );
    assert_eq!(rows[4][6], "false");
    assert_eq!(rows[4][5], "");
}

#[test]
fn bounds_boson_dirichlet() {
    let o = anyon(&[
        "bounds",
        "--alpha",
        "0",
        "--n",
        "5",
        "--bc",
        "dirichlet",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let row = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["source"] == "global-upper")
        .unwrap();
    assert!((row["value"].as_f64().unwrap() - 10.0 * PI * PI).abs() < 1e-10);
    assert_eq!(row["n"], 5);
}

#[test]
fn bounds_fractionality_note() {
    let o = anyon(&["bounds", "--alpha", "3/5", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha_star = 1/5"));
}

#[test]
fn bounds_sweep_to_file() {
    let dir = std::env::temp_dir().join(format!("anyon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let o = anyon(&[
        "bounds",
        "--alpha-grid",
        "0:1:0.25",
        "--alpha",
        "1/3",
        "--n",
        "1..4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let rows = csv_rows(&std::fs::read_to_string(&path).unwrap());
    let alphas: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(alphas.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(alphas.first(), Some(&0.0));
    assert_eq!(alphas.last(), Some(&1.0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bounds", "--n", "3"][..],
        &["bounds", "--alpha", "x", "--n", "3"],
        &["bounds", "--alpha", "0.1", "--n", "0"],
        &["bounds", "--alpha", "0.1", "--n", "3", "--bc", "periodic"],
        &["bounds", "--alpha", "1/0", "--n", "3"],
        &["e2", "--alpha", "0.1", "--grids", "8,6,10"],
        &["trial", "--n", "9", "--alpha", "0.1"],
        &["trial", "--n", "2", "--alpha", "0.1", "--fd-step", "1"],
        &["lt", "--alpha", "0.5", "--harmonic", "--n", "3"],
        &["lt", "--alpha", "0.5", "--constant", "0.01"],
        &[
            "lt",
            "--alpha",
            "0",
            "--constant",
            "0.01",
            "--potential-neg-l2sq",
            "1",
        ],
        &["verify", "nothing"],
    ] {
        assert_eq!(anyon(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn lt_examples() {
    let o = anyon(&[
        "lt",
        "--alpha",
        "0.5",
        "--constant",
        "0.01",
        "--harmonic",
        "--n",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o)["value"].as_f64().unwrap();
    assert!((v - 4.0 / 3.0 * 1000.0 * (0.005 / PI).sqrt()).abs() < 1e-10);
    assert!((v - 53.19).abs() < 5e-3);

    let o = anyon(&[
        "lt",
        "--alpha",
        "0",
        "--constant",
        "0.01",
        "--density-l2sq",
        "5",
    ]);
    assert_eq!(json(&o)["value"].as_f64(), Some(0.0));

    let o = anyon(&[
        "lt",
        "--alpha",
        "0.25",
        "--constant",
        "2",
        "--potential-neg-l2sq",
        "3",
    ]);
    assert_eq!(json(&o)["value"].as_f64(), Some(-1.5));
}

#[test]
fn trial_boson_dirichlet_is_exact_and_deterministic() {
    let args = [
        "trial",
        "--n",
        "2",
        "--alpha",
        "0",
        "--bc",
        "dirichlet",
        "--samples",
        "100000",
        "--seed",
        "7",
    ];
    let first = anyon(&args);
    assert_eq!(first.status.code(), Some(0));
    let mean = json(&first)["estimate"]["mean"].as_f64().unwrap();
    assert!((mean - 4.0 * PI * PI).abs() < 1e-9);
    assert_eq!(first.stdout, anyon(&args).stdout);
}

#[test]
fn trial_four_particles_below_closed_form() {
    let o = anyon(&[
        "trial",
        "--n",
        "4",
        "--alpha",
        "0.01",
        "--bc",
        "neumann",
        "--samples",
        "1000000",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mean = v["estimate"]["mean"].as_f64().unwrap();
    let stderr = v["estimate"]["stderr"].as_f64().unwrap();
    let bound = v["comparison"]["closed_form"].as_f64().unwrap();
    assert!(mean <= bound + 3.0 * stderr);
    assert_eq!(v["comparison"]["dominated"], true);
}

#[test]
fn e2_endpoints_pass() {
    let o = anyon(&["e2", "--alpha", "0", "--grids", "6,8,10"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["extrapolated"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(v["sandwich"]["pass"], true);

    let o = anyon(&["e2", "--alpha", "1", "--grids", "8,10,12"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["extrapolated"].as_f64().unwrap() / (PI * PI) - 1.0).abs() < 0.02);
    assert_eq!(v["per_grid"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "integrals", "--alpha", "0.05"][..],
        &["verify", "ordering", "--quick"],
        &["verify", "endpoints"],
        &["verify", "fractionality", "--quick"],
    ] {
        let o = anyon(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).lines().any(|l| l.starts_with("PASS")));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = anyon(&["verify", "integrals", "--alpha", "0.05"]);
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(),
        5
    );
}
