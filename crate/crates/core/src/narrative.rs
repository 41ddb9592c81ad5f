//! Per-frame readings of an event graph.
//!
//! In a frame with velocity `V` every photon segment runs from the endpoint with
//! the smaller frame time to the one with the larger frame time. An event is an
//! emitter for the segments it starts and an absorber for those it ends, so a
//! reflection in the rest frame may become a pair emission in a superluminal
//! frame.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kinematics::{FrameTransform, FrameVelocity, SpacetimeEvent, NULL_EPSILON};
use crate::scenario::{fixed, EventGraph};
use crate::worldline::{traversal_order, StateLabel, Traversal, Worldline};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NarrativeError {
    #[error("event `{event}` is not a flip on worldline `{actor}`")]
    NotAFlip { actor: String, event: String },
    #[error("slice time {tau} coincides with event `{event}`")]
    SliceOnEvent { tau: f64, event: String },
    #[error("photon segment from `{0}` has equal frame times at both ends")]
    DegenerateSegment(String),
}

/// Emission and absorption counts credited to one event in one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameEventRole {
    pub event_id: String,
    pub emitted: usize,
    pub absorbed: usize,
}

impl FrameEventRole {
    pub fn counts(&self) -> (usize, usize) {
        (self.emitted, self.absorbed)
    }

    /// Short verb for the role: `emits`, `pair-emits`, `reflects`, `absorbs`, ...
    pub fn verb(&self) -> String {
        match (self.emitted, self.absorbed) {
            (1, 0) => "emits".into(),
            (2, 0) => "pair-emits".into(),
            (0, 1) => "absorbs".into(),
            (0, 2) => "pair-absorbs".into(),
            (1, 1) => "reflects".into(),
            (0, 0) => "is idle".into(),
            (e, a) => format!("emits {e} and absorbs {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipReading {
    pub event_id: String,
    pub before: StateLabel,
    pub after: StateLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameNarrative {
    pub velocity: FrameVelocity,
    /// Events in frame coordinates, ascending frame time.
    pub ordered_events: Vec<SpacetimeEvent>,
    /// Same order as `ordered_events`.
    pub roles: Vec<FrameEventRole>,
    pub flip_readings: Vec<FlipReading>,
    /// Actors with no flips at all.
    pub unflipped: Vec<String>,
}

fn frame_order(a: &SpacetimeEvent, b: &SpacetimeEvent) -> std::cmp::Ordering {
    a.t.total_cmp(&b.t)
        .then_with(|| a.x.total_cmp(&b.x))
        .then_with(|| a.id.cmp(&b.id))
}

/// Events mapped into the frame and sorted by `(t_V, x_V, id)`.
pub fn order_events(graph: &EventGraph, velocity: FrameVelocity) -> Vec<SpacetimeEvent> {
    let transform = FrameTransform::new(velocity);
    let mut events: Vec<SpacetimeEvent> =
        graph.events.iter().map(|e| transform.apply(&e.event)).collect();
    events.sort_by(frame_order);
    events
}

pub fn event_roles(
    graph: &EventGraph,
    velocity: FrameVelocity,
) -> Result<Vec<FrameEventRole>, NarrativeError> {
    let transform = FrameTransform::new(velocity);
    let ordered = order_events(graph, velocity);
    let mut roles: Vec<FrameEventRole> = ordered
        .iter()
        .map(|e| FrameEventRole {
            event_id: e.id.clone(),
            emitted: 0,
            absorbed: 0,
        })
        .collect();
    let mut credit = |id: &str, emitted: bool| {
        if let Some(role) = roles.iter_mut().find(|r| r.event_id == id) {
            if emitted {
                role.emitted += 1;
            } else {
                role.absorbed += 1;
            }
        }
    };
    for segment in &graph.photon_segments {
        let (t0, _) = transform.apply_coords(segment.start.0, segment.start.1);
        let (t1, _) = transform.apply_coords(segment.end.0, segment.end.1);
        if (t1 - t0).abs() <= NULL_EPSILON {
            return Err(NarrativeError::DegenerateSegment(segment.from_event.clone()));
        }
        let start_is_earlier = t0 < t1;
        credit(&segment.from_event, start_is_earlier);
        if let Some(to) = segment.to_event() {
            credit(to, !start_is_earlier);
        }
    }
    Ok(roles)
}

/// The states on either side of a flip, in the order the frame reads them.
pub fn flip_reading(
    worldline: &Worldline,
    event_id: &str,
    velocity: FrameVelocity,
) -> Result<(StateLabel, StateLabel), NarrativeError> {
    let index = worldline
        .flip_index(event_id)
        .ok_or_else(|| NarrativeError::NotAFlip {
            actor: worldline.actor_id.clone(),
            event: event_id.to_string(),
        })?;
    let segments = worldline.segments();
    let (earlier, later) = (segments[index].state, segments[index + 1].state);
    Ok(match traversal_order(worldline, velocity) {
        Traversal::Forward => (earlier, later),
        Traversal::Reversed => (later, earlier),
    })
}

/// Same as [`flip_reading`], looking the worldline up by the event's actor.
pub fn flip_reading_in(
    graph: &EventGraph,
    event_id: &str,
    velocity: FrameVelocity,
) -> Result<(StateLabel, StateLabel), NarrativeError> {
    let not_a_flip = || NarrativeError::NotAFlip {
        actor: String::new(),
        event: event_id.to_string(),
    };
    let event = graph.event(event_id).ok_or_else(not_a_flip)?;
    let worldline = graph.worldline(&event.actor_id).ok_or_else(not_a_flip)?;
    flip_reading(worldline, event_id, velocity)
}

/// Number of photon segments in flight at frame time `tau`.
pub fn photon_count_at(
    graph: &EventGraph,
    velocity: FrameVelocity,
    tau: f64,
) -> Result<usize, NarrativeError> {
    let transform = FrameTransform::new(velocity);
    for e in &graph.events {
        let (t, _) = transform.apply_coords(e.event.t, e.event.x);
        if (t - tau).abs() <= NULL_EPSILON {
            return Err(NarrativeError::SliceOnEvent {
                tau,
                event: e.event.id.clone(),
            });
        }
    }
    Ok(graph
        .photon_segments
        .iter()
        .filter(|s| {
            let (t0, _) = transform.apply_coords(s.start.0, s.start.1);
            let (t1, _) = transform.apply_coords(s.end.0, s.end.1);
            t0.min(t1) < tau && tau < t0.max(t1)
        })
        .count())
}

pub fn narrative_report(
    graph: &EventGraph,
    velocity: FrameVelocity,
) -> Result<FrameNarrative, NarrativeError> {
    let ordered_events = order_events(graph, velocity);
    let roles = event_roles(graph, velocity)?;
    let flip_readings = ordered_events
        .iter()
        .map(|e| {
            let (before, after) = flip_reading_in(graph, &e.id, velocity)?;
            Ok(FlipReading {
                event_id: e.id.clone(),
                before,
                after,
            })
        })
        .collect::<Result<Vec<_>, NarrativeError>>()?;
    let unflipped = graph
        .worldlines
        .iter()
        .filter(|w| w.flips().is_empty())
        .map(|w| w.actor_id.clone())
        .collect();
    Ok(FrameNarrative {
        velocity,
        ordered_events,
        roles,
        flip_readings,
        unflipped,
    })
}

impl FrameNarrative {
    /// One clause per event in frame order, then the actors that never flip,
    /// e.g. `R pair-emits; B absorbs; A absorbs`.
    pub fn summary(&self) -> String {
        let mut clauses: Vec<String> = self
            .roles
            .iter()
            .map(|r| format!("{} {}", r.event_id, r.verb()))
            .collect();
        clauses.extend(self.unflipped.iter().map(|id| format!("{id} never flips")));
        clauses.join("; ")
    }

    /// Tab-separated report with one line per event.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# frame\tV={:.6}\t{}",
            fixed(self.velocity.value()),
            self.velocity.regime()
        );
        let _ = writeln!(out, "id\tt_V\tx_V\temitted\tabsorbed\tbefore\tafter");
        for ((event, role), flip) in self
            .ordered_events
            .iter()
            .zip(&self.roles)
            .zip(&self.flip_readings)
        {
            let _ = writeln!(
                out,
                "{}\t{:.6}\t{:.6}\t{}\t{}\t{}\t{}",
                event.id,
                fixed(event.t),
                fixed(event.x),
                role.emitted,
                role.absorbed,
                flip.before,
                flip.after
            );
        }
        let _ = writeln!(out, "# {}", self.summary());
        out
    }
}
