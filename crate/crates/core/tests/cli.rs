use std::io::Write;

use superluminal::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["superluminal"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn transform_prints_six_decimals() {
    assert_eq!(invoke(&["transform", "--v", "0", "--event", "1,0"]).1, "1.000000 0.000000\n");
    assert_eq!(
        invoke(&["transform", "--v", "10/3", "--event", "1,0"]).1,
        "-0.314485 1.048285\n"
    );
    assert_eq!(
        invoke(&["transform", "--v", "-2", "--event", "1,0"]).1,
        "0.577350 1.154701\n"
    );
}

#[test]
fn interval_reports_both_forms() {
    let (code, out, _) = invoke(&["interval", "--e1", "0,0", "--e2", "1,0", "--v", "10/3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "ds2_rest\t1.000000");
    assert_eq!(lines[1], "class\ttimelike");
    assert_eq!(lines[2], "regime\tsuperluminal");
    assert_eq!(lines[4], "ds2_frame\t1.000000");
}

#[test]
fn narrative_of_builtin_fig2() {
    let (code, out, _) = invoke(&["narrative", "--builtin", "fig2", "--v", "10/3"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("id\t"))
        .map(|l| l.split('\t').collect())
        .collect();
    let summary: Vec<(&str, &str, &str)> = rows.iter().map(|r| (r[0], r[3], r[4])).collect();
    assert_eq!(summary, vec![("R", "2", "0"), ("B", "0", "1"), ("A", "0", "1")]);
    assert!(out.ends_with("# R pair-emits; B absorbs; A absorbs\n"));
}

#[test]
fn slice_of_builtin_fig2() {
    assert_eq!(invoke(&["slice", "--builtin", "fig2", "--v", "10/3", "--time", "-2.3"]).1, "2\n");
    assert_eq!(invoke(&["slice", "--builtin", "fig2", "--v", "10/3", "--time", "-1.0"]).1, "1\n");
    assert_eq!(invoke(&["slice", "--builtin", "fig2", "--v", "0", "--time", "1"]).1, "1\n");
}

#[test]
fn scenario_file_round_trip_through_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# the reflection process").unwrap();
    f.write_all(superluminal::serialize_scenario(&superluminal::canonical_fig2()).as_bytes())
        .unwrap();
    drop(f);
    let path = path.to_str().unwrap();
    let (code, from_file, _) = invoke(&["simulate", path]);
    assert_eq!(code, 0);
    assert_eq!(from_file, invoke(&["simulate", "--builtin", "fig2"]).1);
    assert!(from_file.contains("event\tR\tR\treflection\t2.000000\t-2.000000"));
}

#[test]
fn render_and_axes_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig3.svg");
    let (code, _, _) = invoke(&["render", "--builtin", "fig3", "--v", "10/3", "--out", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"flip\"").count(), 2);

    let (code, out, _) = invoke(&["axes", "--v", "3/10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml"));
}

#[test]
fn exit_codes() {
    // Domain errors.
    let (code, _, err) = invoke(&["transform", "--v", "1", "--event", "1,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("light speed"));
    assert_eq!(invoke(&["slice", "--builtin", "fig2", "--v", "0", "--time", "2"]).0, 1);
    assert_eq!(invoke(&["simulate", "/nonexistent/scenario.txt"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "actor TLA A at 0 state g\nemit from A at 0 dir -\nhorizon 2\n").unwrap();
    let (code, _, err) = invoke(&["simulate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not excited"), "{err}");

    // Usage errors.
    assert_eq!(invoke(&["transform", "--v", "fast", "--event", "1,0"]).0, 2);
    assert_eq!(invoke(&["simulate"]).0, 2);
    assert_eq!(invoke(&["narrative", "--builtin", "fig9", "--v", "0"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}
