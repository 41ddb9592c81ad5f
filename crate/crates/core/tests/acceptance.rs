//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p superluminal --test acceptance`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superluminal::document::{parse_scenario, serialize_scenario, DocumentError};
use superluminal::kinematics::{
    compose, interval_in_frame, interval_rest, max_abs_diff, ordering_preserved, FrameTransform,
    FrameVelocity, SpacetimeEvent, IDENTITY,
};
use superluminal::narrative::{event_roles, order_events, photon_count_at};
use superluminal::render::{render_scenario, DiagramSpec};
use superluminal::scenario::{
    canonical_fig2, canonical_fig3, canonical_fig4, mutual_exclusion_check, simulate, EventGraph,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample_velocity(rng: &mut ChaCha8Rng, exclusion: f64) -> f64 {
    loop {
        let v: f64 = rng.gen_range(-5.0..5.0);
        if (1.0 - v * v).abs() >= exclusion {
            return v;
        }
    }
}

fn fig(n: u8) -> EventGraph {
    let s = match n {
        2 => canonical_fig2(),
        3 => canonical_fig3(),
        _ => canonical_fig4(),
    };
    simulate(&s).expect("canonical scenario simulates")
}

fn v(value: f64) -> FrameVelocity {
    FrameVelocity::new(value).unwrap()
}

fn roles_of(g: &EventGraph, velocity: f64) -> Result<Vec<(String, usize, usize)>, String> {
    Ok(event_roles(g, v(velocity))
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| (r.event_id, r.emitted, r.absorbed))
        .collect())
}

fn owned(items: &[(&str, usize, usize)]) -> Vec<(String, usize, usize)> {
    items.iter().map(|&(id, e, a)| (id.to_string(), e, a)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let value = sample_velocity(&mut rng, 1e-6);
        let l = FrameTransform::from_velocity(value).map_err(|e| e.to_string())?;
        let err = max_abs_diff(&compose(&l, &l.inverse()), &IDENTITY);
        ensure(err < 1e-9, || format!("V = {value}: ||L_V L_-V - I|| = {err:e}"))?;
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("max error {worst:.1e} over 1000 V, {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let velocities: Vec<FrameTransform> = (0..100)
        .map(|_| FrameTransform::from_velocity(sample_velocity(&mut rng, 1e-6)).unwrap())
        .collect();
    let mut worst: f64 = 0.0;
    let mut compared = 0usize;
    for _ in 0..1000 {
        let e1 = SpacetimeEvent::point(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let e2 = SpacetimeEvent::point(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let rest = interval_rest(&e1, &e2);
        for l in &velocities {
            let (dt, dx) = l.apply_coords(e2.t - e1.t, e2.x - e1.x);
            let frame = interval_in_frame(dt, dx, l.regime());
            let rel = (frame - rest).abs() / rest.abs().max(f64::MIN_POSITIVE);
            ensure(rel <= 1e-9, || {
                format!(
                    "V = {}: frame {frame} vs rest {rest} (rel {rel:e})",
                    l.velocity().value()
                )
            })?;
            worst = worst.max(rel);
            compared += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{compared} comparisons, max rel error {worst:.1e}, {elapsed:?}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0usize;
    for _ in 0..1000 {
        let dt: f64 = rng.gen_range(0.01..10.0);
        let dx = rng.gen_range(-0.999..0.999) * dt;
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let e1 = SpacetimeEvent::point(0.0, 0.0);
        let e2 = SpacetimeEvent::point(sign * dt, sign * dx);
        for _ in 0..10 {
            let value = rng.gen_range(-0.999_999..0.999_999);
            let kept = ordering_preserved(&e1, &e2, v(value)).map_err(|e| e.to_string())?;
            ensure(kept, || format!("subluminal V = {value} reversed {e2:?}"))?;
            checked += 1;
        }
    }
    let witness = ordering_preserved(
        &SpacetimeEvent::point(0.0, 0.0),
        &SpacetimeEvent::point(1.0, 0.0),
        v(10.0 / 3.0),
    )
    .map_err(|e| e.to_string())?;
    ensure(!witness, || "V = 10/3 did not reverse (0,0),(1,0)".into())?;
    Ok(format!("0 violations in {checked} subluminal checks; V=10/3 reverses (0,0),(1,0)"))
}

fn criterion_4() -> Outcome {
    let g = fig(2);
    let ordered = order_events(&g, v(10.0 / 3.0));
    let ids: Vec<&str> = ordered.iter().map(|e| e.id.as_str()).collect();
    ensure(ids == ["R", "B", "A"], || format!("order {ids:?}"))?;
    // Closed forms of the matrix arithmetic: t~ = -(3/sqrt 91)(t - V x).
    let root = 91f64.sqrt();
    let expected = [-26.0 / root, -19.0 / root, 0.0];
    for (e, want) in ordered.iter().zip(expected) {
        ensure((e.t - want).abs() <= 1e-6, || format!("{}: t~ = {} vs {want}", e.id, e.t))?;
    }
    let roles = roles_of(&g, 10.0 / 3.0)?;
    ensure(roles == owned(&[("R", 2, 0), ("B", 0, 1), ("A", 0, 1)]), || {
        format!("roles {roles:?}")
    })?;
    Ok(format!(
        "R, B, A at ({:.6}, {:.6}, 0); R pair-emits, B and A absorb (quoted -1.991737 for B is off by {:.1e})",
        ordered[0].t,
        ordered[1].t,
        (ordered[1].t + 1.991737).abs()
    ))
}

fn criterion_5() -> Outcome {
    let g = fig(2);
    let cases = [(0.0, 1.0, 1usize), (10.0 / 3.0, -2.3, 2), (10.0 / 3.0, -1.0, 1)];
    for (velocity, tau, want) in cases {
        let got = photon_count_at(&g, v(velocity), tau).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("V = {velocity}, tau = {tau}: {got} photons, want {want}"))?;
    }
    Ok("counts 1, 2, 1".into())
}

fn criterion_6() -> Outcome {
    let sup = 10.0 / 3.0;
    let g3 = fig(3);
    let r3 = roles_of(&g3, sup)?;
    ensure(r3 == owned(&[("C", 1, 0), ("A", 0, 1)]), || format!("fig3 roles {r3:?}"))?;
    for id in ["R", "B", "D"] {
        let w = g3.worldline(id).ok_or_else(|| format!("fig3 lacks {id}"))?;
        ensure(w.flips().is_empty(), || format!("fig3: {id} flipped"))?;
    }
    let g4 = fig(4);
    let r4 = roles_of(&g4, sup)?;
    ensure(r4 == owned(&[("R", 2, 0), ("D", 0, 1), ("A", 0, 1)]), || {
        format!("fig4 roles {r4:?}")
    })?;
    let c = g4.worldline("C").ok_or("fig4 lacks C")?;
    ensure(c.flips().is_empty(), || "fig4: C flipped".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sub = 0;
    let mut superluminal = 0;
    for k in 0..100 {
        // Alternate regimes so both are represented.
        let value: f64 = if k % 2 == 0 {
            rng.gen_range(-0.999..0.999)
        } else {
            let magnitude = rng.gen_range(1.001..5.0);
            if rng.gen_bool(0.5) { magnitude } else { -magnitude }
        };
        if value.abs() < 1.0 {
            sub += 1;
        } else {
            superluminal += 1;
        }
        for g in [&g3, &g4] {
            let ok = mutual_exclusion_check(g, "C", "D").map_err(|e| e.to_string())?;
            let active = event_roles(g, v(value))
                .map_err(|e| e.to_string())?
                .iter()
                .filter(|r| (r.event_id == "C" || r.event_id == "D") && r.emitted + r.absorbed > 0)
                .count();
            ensure(ok && active <= 1, || format!("detectors C and D both fire at V = {value}"))?;
        }
    }
    Ok(format!(
        "fig3 C->A, fig4 R=>D,A; exclusion holds for {sub} subluminal + {superluminal} superluminal V"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let frames: Vec<FrameTransform> = (0..100)
        .map(|_| FrameTransform::from_velocity(sample_velocity(&mut rng, 1e-6)).unwrap())
        .collect();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let dt: f64 = rng.gen_range(0.01..10.0);
        let dx = if rng.gen_bool(0.5) { dt } else { -dt };
        for l in &frames {
            let (ft, fx) = l.apply_coords(dt, dx);
            let err = ((fx / ft).abs() - 1.0).abs();
            ensure(err <= 1e-9, || {
                format!("V = {}: frame speed off by {err:e}", l.velocity().value())
            })?;
            worst = worst.max(err);
        }
    }
    Ok(format!("100000 segment/frame pairs, max |speed - 1| {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut checked = 0;
    for (n, flips) in [(2u8, 3usize), (3, 2), (4, 3)] {
        let g = fig(n);
        ensure(g.flip_count() == flips, || format!("fig{n} has {} flips", g.flip_count()))?;
        for (velocity, tag) in [(0.0, "v0"), (10.0 / 3.0, "v10_3")] {
            let svg = render_scenario(&g, &DiagramSpec::new(v(velocity)));
            let path = dir.join(format!("fig{n}_{tag}.svg"));
            let golden = std::fs::read_to_string(&path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(svg == golden, || format!("{} differs", path.display()))?;
            let circles = svg.matches("class=\"flip\"").count();
            ensure(circles == flips, || format!("fig{n} {tag}: {circles} filled circles"))?;
            let rays = svg.matches("class=\"photon\"").count();
            ensure(rays == g.photon_segments.len(), || format!("fig{n} {tag}: {rays} rays"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} SVGs byte-identical; filled circles 3, 2, 3"))
}

fn criterion_9() -> Outcome {
    for s in [canonical_fig2(), canonical_fig3(), canonical_fig4()] {
        let text = serialize_scenario(&s);
        let parsed = parse_scenario(&text).map_err(|e| e.to_string())?;
        ensure(parsed == s, || format!("round trip changed:\n{text}"))?;
        ensure(serialize_scenario(&parsed) == text, || "serialization not a fixed point".into())?;
    }
    let cases: [(&str, &str); 3] = [
        ("", "missing horizon"),
        ("actor TLA A at 0 state g\nemit from A at 0 dir -\nhorizon 6\n", "not excited"),
        ("actor TLA A at 0 state e\nactor TLA A at 1 state g\nhorizon 6\n", "duplicate"),
    ];
    for (doc, needle) in cases {
        match parse_scenario(doc) {
            Err(DocumentError::Semantic(msg)) if msg.contains(needle) => {}
            other => return Err(format!("expected SemanticError({needle}), got {other:?}")),
        }
    }
    Ok("fig2/3/4 round-trip; missing horizon, unexcited emitter, duplicate id rejected".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 inverse identity", criterion_1),
        ("2 interval invariance", criterion_2),
        ("3 ordering laws", criterion_3),
        ("4 fig2 superluminal narrative", criterion_4),
        ("5 photon slice counts", criterion_5),
        ("6 fig3/fig4 narratives", criterion_6),
        ("7 lightcone preservation", criterion_7),
        ("8 rendering contract", criterion_8),
        ("9 parser", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
