use std::process::Command as Process;

use clap::Parser;
use serde_json::Value;

use shelstad_cli::{emit_plot_data, run, t_grid, Command, LambdaSpec, OutputFormat, RunConfig, EXIT_CONFIG, EXIT_OK};
use shelstad_core::packets::Route;
use shelstad_core::real_forms::Catalog;
use shelstad_core::roots::Weight;
use shelstad_core::torus::TorusPoint;

fn parse(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("shelstad").chain(args.iter().copied())).unwrap()
}

fn json(config: &RunConfig) -> (i32, Value) {
    let mut config = config.clone();
    config.format = OutputFormat::Json;
    let out = run(&config);
    (out.status, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn flags_round_trip() {
    let configs = [
        RunConfig::new(Command::Verify),
        parse(&[
            "sweep",
            "--pair",
            "su21/su3",
            "--lambda",
            "shift=0..3",
            "--count",
            "7",
            "--seed",
            "9",
        ]),
        parse(&[
            "verify",
            "--lambda",
            "2,1;-1,3",
            "--point",
            "1/3,1/5",
            "--point",
            "2/7,1/11",
            "--route",
            "characters",
        ]),
        parse(&[
            "plot",
            "--pair",
            "sl2R/su2",
            "--lambda",
            "n=1..5",
            "--grid",
            "17",
            "--margin",
            "0.01",
            "--direction",
            "2",
        ]),
        parse(&[
            "weil",
            "--lambda",
            "n=4",
            "--format",
            "csv",
            "--jobs",
            "2",
            "--catalog",
            "/tmp/pairs.json",
        ]),
    ];
    for c in configs {
        let args = c.to_args();
        let back = RunConfig::try_parse_from(std::iter::once("shelstad".to_string()).chain(args.clone())).unwrap();
        assert_eq!(back, c, "{args:?}");
    }
    assert_eq!(parse(&["verify"]), RunConfig::new(Command::Verify));
    assert_eq!("shift=0..3".parse::<LambdaSpec>().unwrap(), LambdaSpec::Shifted(0, 3));
    assert!("n=".parse::<LambdaSpec>().is_err());
    assert!(RunConfig::try_parse_from(["shelstad", "verify", "--route", "sideways"]).is_err());
}

#[test]
fn sl2_point_value_report() {
    let config = parse(&["verify", "--pair", "sl2R/su2", "--lambda", "n=3", "--point", "1/4"]);
    let (status, doc) = json(&config);
    assert_eq!(status, EXIT_OK);
    let r = &doc["records"][0];
    assert_eq!(r["equal"], Value::Bool(true));
    assert_eq!(r["pair"], "sl2R/su2");
    assert_eq!(r["route"], "both");
    assert_eq!(r["q"], 1);
    assert_eq!(r["packet_size"], 2);
    assert_eq!(r["order"], 4);
    for side in ["lhs", "rhs"] {
        assert_eq!(r[side]["float"][0].as_f64().unwrap(), -1.0, "{side}");
        assert_eq!(r[side]["float"][1].as_f64().unwrap(), 0.0, "{side}");
    }
    assert_eq!(r["lhs"], r["rhs"]);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn catalog_listing() {
    let (status, doc) = json(&RunConfig::new(Command::ListCatalog));
    assert_eq!(status, EXIT_OK);
    let names: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["pair"].as_str().unwrap())
        .collect();
    assert!(names.len() >= 4);
    assert!(names.contains(&"sl2R/su2") && names.contains(&"su21/su3"));
}

#[test]
fn singular_point_fails_with_list() {
    let config = parse(&["verify", "--pair", "sl2R/su2", "--point", "1/2"]);
    let out = run(&config);
    assert_ne!(out.status, EXIT_OK);
    assert_eq!(out.failures.len(), 1);
    assert_eq!(out.failures[0].kind, "SingularPoint");
    let listed: Value = serde_json::from_str(&out.failures_json()).unwrap();
    assert_eq!(listed[0]["kind"], "SingularPoint");
}

#[test]
fn config_and_catalog_errors() {
    let unknown = run(&parse(&["verify", "--pair", "nope/none"]));
    assert_eq!(unknown.status, EXIT_CONFIG);
    assert_eq!(unknown.failures[0].kind, "ConfigError");

    let dir = std::env::temp_dir().join(format!("shelstad-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "[{\"name\": 3}]").unwrap();
    let mut config = parse(&["list-catalog"]);
    config.catalog = Some(bad);
    let out = run(&config);
    assert_eq!(out.status, EXIT_CONFIG);
    assert_eq!(out.failures[0].kind, "CatalogError");

    // a well-formed file whose grading is broken: validate reports it, verify refuses it
    let graded = dir.join("graded.json");
    std::fs::write(
        &graded,
        r#"[{"name":"x/y","cartan_type":"A2","compact_roots":[0,1,3,4]}]"#,
    )
    .unwrap();
    config = parse(&["validate"]);
    config.catalog = Some(graded.clone());
    let out = run(&config);
    assert_eq!(out.status, 1);
    assert_eq!(out.failures[0].kind, "InvalidRealForm");
    config.command = Command::Verify;
    assert_eq!(run(&config).status, EXIT_CONFIG);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_deterministic() {
    let config = parse(&[
        "sweep", "--pair", "su21/su3", "--count", "4", "--seed", "3", "--format", "json",
    ]);
    let a = run(&config).stdout;
    let mut threaded = config.clone();
    threaded.jobs = Some(3);
    assert_eq!(a, run(&config).stdout);
    assert_eq!(a, run(&threaded).stdout);
    let other_seed = RunConfig { seed: 4, ..config };
    assert_ne!(a, run(&other_seed).stdout);
}

#[test]
fn human_and_csv_outputs() {
    let mut config = parse(&["packet", "--pair", "su21/su3"]);
    let human = run(&config).stdout;
    assert!(human.starts_with("pair"));
    config.format = OutputFormat::Csv;
    let csv = run(&config).stdout;
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().next().unwrap().starts_with("pair,lambda,member"));
}

#[test]
fn character_and_pf1_commands() {
    let config = parse(&[
        "character",
        "--pair",
        "so22/so4",
        "--lambda",
        "n=1",
        "--point",
        "1/5,1/7",
    ]);
    let (status, doc) = json(&config);
    assert_eq!(status, EXIT_OK);
    // four discrete series and the finite-dimensional character
    assert_eq!(doc["records"].as_array().unwrap().len(), 5);

    let (status, doc) = json(&parse(&["pf1", "--pair", "su21/su3", "--count", "3"]));
    assert_eq!(status, EXIT_OK);
    for r in doc["records"].as_array().unwrap() {
        assert_eq!(r["bijection"], true);
        assert_eq!(r["bridge_holds"], true);
        assert_eq!(r["cosets"], 3);
    }
}

#[test]
fn route_flag_reaches_reports() {
    for route in [Route::Characters, Route::FixedPoint] {
        let mut config = parse(&["verify", "--pair", "su21/su3", "--count", "2"]);
        config.route = route;
        let (status, doc) = json(&config);
        assert_eq!(status, EXIT_OK);
        assert_eq!(doc["records"][0]["route"], route.to_string());
    }
}

#[test]
fn plot_rows() {
    let pair = Catalog::builtin().lookup("sl2R/su2").unwrap().clone();
    let rs = pair.root_system();
    let n3 = Weight::from_ints(&[3]);
    let single = emit_plot_data(&pair, &n3, &[std::f64::consts::FRAC_PI_2], None).unwrap();
    assert!((single[0].lhs_re + 1.0).abs() < 1e-12 && (single[0].rhs_re + 1.0).abs() < 1e-12);
    assert!(emit_plot_data(&pair, &n3, &[], None).unwrap().is_empty());
    assert!(t_grid(rs, 0, 1e-3, None).is_empty());

    // t = 0 is singular: a NaN row, not an error
    let row = emit_plot_data(&pair, &n3, &[0.0], None).unwrap()[0];
    assert!(row.abs_diff.is_nan() || !row.lhs_re.is_finite());

    let grid = t_grid(rs, 200, 1e-3, None);
    assert_eq!(grid.len(), 200);
    for r in emit_plot_data(&pair, &n3, &grid, None).unwrap() {
        assert!(r.abs_diff < 1e-9, "t={}", r.t);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shelstad");
    let ok = Process::new(bin)
        .args(["verify", "--pair", "sl2R/su2", "--lambda", "n=3", "--point", "1/4"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));

    let singular = Process::new(bin)
        .args(["verify", "--pair", "sl2R/su2", "--point", "1/2"])
        .output()
        .unwrap();
    assert_eq!(singular.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&singular.stderr).unwrap();
    assert_eq!(err[0]["kind"], "SingularPoint");

    let bad_flag = Process::new(bin).args(["verify", "--count", "many"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(EXIT_CONFIG));

    let _ = TorusPoint::parse("1/4").unwrap();
}
