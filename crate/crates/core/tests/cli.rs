//! End-to-end runs of the `skewquiver` binary on the bundled data.

use std::path::PathBuf;
use std::process::{Command, Output};

use skewquiver::format::parse_input;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewquiver"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn skew_output_is_reingestable() {
    let o = run(&["skew", &path("fig5.skw")]);
    assert_eq!(o.status.code(), Some(0));
    let doc = parse_input(&stdout(&o)).unwrap();
    assert_eq!(doc.quiver.num_vertices(), 5);
    assert_eq!(doc.quiver.num_arrows(), 6);
    assert_eq!(doc.action.group.order(), 2);
    let again = run(&["skew", &path("fig5.skw")]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn json_report_shape() {
    let o = run(&["--json", "rank", &path("fig5.skw")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "rank");
    assert_eq!(v["prime"], 1009);
    assert_eq!(v["passed"], true);
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["results"]["level_dims"].as_array().unwrap().len(), 12);
}

#[test]
fn digest_depends_on_inputs() {
    let digest = |file: &str| -> String {
        let o = run(&["--json", "check-gentle", &path(file)]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["inputs_digest"].as_str().unwrap().to_string()
    };
    assert_eq!(digest("gentle_a4.skw"), digest("gentle_a4.skw"));
    assert_ne!(digest("gentle_a4.skw"), digest("fig6.skw"));
}

#[test]
fn gentle_exit_codes() {
    assert_eq!(
        run(&["check-gentle", &path("gentle_a4.skw")]).status.code(),
        Some(0)
    );
    let o = run(&["check-gentle", &path("fig6.skw")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("beta.gamma.beta"));
    assert_eq!(
        run(&["check-gentle", &path("a2_specialloop.skw")])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn missing_file_is_an_error() {
    let o = run(&["skew", "no-such-file.skw"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: reading no-such-file.skw"));
}

#[test]
fn ar_quiver_golden_and_dot() {
    let dot = std::env::temp_dir().join(format!("skewquiver-cli-{}.dot", std::process::id()));
    let o = run(&[
        "ar-quiver",
        &path("fig6.skw"),
        "--golden",
        &path("fig8.ar"),
        "--dot",
        &dot.to_string_lossy(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&dot).unwrap();
    std::fs::remove_file(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("style=dashed").count(), 28 - 5);
}

#[test]
fn pushdown_and_hom_commands() {
    let o = run(&["pushdown", &path("fig1.skw"), "--module", "M_fig3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("map delta#0#0 = [[1,0],[0,1]]"));
    let o = run(&["hom", &path("fig5.skw"), "S2", "M32"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-> ok"));
    assert_eq!(
        run(&["hom", &path("fig5.skw"), "S2", "Nope"]).status.code(),
        Some(1)
    );
}

#[test]
fn covering_transport_and_double_skew_pass() {
    for args in [
        vec!["verify-covering", "--all-indecomposables"],
        vec!["transport-ars"],
        vec!["double-skew"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.push(path("fig5.skw"));
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let o = run(&refs);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn prime_override_changes_the_field() {
    let o = run(&["--json", "--prime", "7", "skew", &path("fig5.skw")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["prime"], 7);
}
