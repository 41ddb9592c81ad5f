//! Byte-for-byte SVG baselines. Regenerate with `UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use superluminal::render::{render_axes, render_scenario, Bounds, DiagramSpec};
use superluminal::scenario::{builtin, simulate};
use superluminal::FrameVelocity;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing baseline {}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from its baseline");
}

fn velocity_tag(v: f64) -> &'static str {
    if v == 0.0 {
        "v0"
    } else {
        "v10_3"
    }
}

#[test]
fn scenario_baselines() {
    for fig in ["fig2", "fig3", "fig4"] {
        let graph = simulate(&builtin(fig).unwrap()).unwrap();
        for v in [0.0, 10.0 / 3.0] {
            let spec = DiagramSpec::new(FrameVelocity::new(v).unwrap());
            let svg = render_scenario(&graph, &spec);
            assert_eq!(svg, render_scenario(&graph, &spec));
            check(&format!("{fig}_{}.svg", velocity_tag(v)), &svg);
        }
    }
}

#[test]
fn axes_baselines() {
    for (name, v) in [("axes_v3_10.svg", 0.3), ("axes_v10_3.svg", 10.0 / 3.0)] {
        let svg = render_axes(FrameVelocity::new(v).unwrap(), Bounds::square(2.0));
        check(name, &svg);
    }
}

#[test]
fn circle_and_ray_counts_follow_the_graph() {
    for (fig, flips) in [("fig2", 3), ("fig3", 2), ("fig4", 3)] {
        let graph = simulate(&builtin(fig).unwrap()).unwrap();
        assert_eq!(graph.flip_count(), flips);
        for v in [0.0, 0.3, 10.0 / 3.0, -2.5] {
            let svg = render_scenario(&graph, &DiagramSpec::new(FrameVelocity::new(v).unwrap()));
            assert_eq!(svg.matches("class=\"flip\"").count(), flips, "{fig} at {v}");
            assert_eq!(
                svg.matches("class=\"photon\"").count(),
                graph.photon_segments.len()
            );
            assert_eq!(
                svg.matches("<g class=\"worldline\"").count(),
                graph.worldlines.len()
            );
        }
    }
}
