//! At-rest actors and photon segments.

use std::fmt;

use thiserror::Error;

use crate::kinematics::{FrameTransform, FrameVelocity, SpacetimeEvent, NULL_EPSILON};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WorldlineError {
    #[error("time {time} is a flip of actor `{actor}`; the state is undefined there")]
    AtFlipBoundary { actor: String, time: f64 },
    #[error("time {time} is outside the worldline of actor `{actor}`")]
    OutOfRange { actor: String, time: f64 },
}

/// Internal state of an actor. For a TLA `G` is the ground state and `E` the
/// excited one; for a mirror the two labels are degenerate in energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    G,
    E,
}

impl StateLabel {
    pub fn flipped(self) -> StateLabel {
        match self {
            StateLabel::G => StateLabel::E,
            StateLabel::E => StateLabel::G,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StateLabel::G => "g",
            StateLabel::E => "e",
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActorKind {
    /// Two-level atom: emits or absorbs.
    Tla,
    Mirror,
}

impl ActorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ActorKind::Tla => "TLA",
            ActorKind::Mirror => "MIRROR",
        }
    }
}

/// Rest-frame propagation direction of a photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Plus => "+",
            Direction::Minus => "-",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSegment {
    pub t_start: f64,
    pub t_end: f64,
    pub state: StateLabel,
}

/// A flip on a worldline: the event id and its rest-frame time.
#[derive(Debug, Clone, PartialEq)]
pub struct Flip {
    pub event_id: String,
    pub time: f64,
}

/// An actor at rest at `position`, with its state history over `[start, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    pub actor_id: String,
    pub kind: ActorKind,
    pub position: f64,
    segments: Vec<StateSegment>,
    flips: Vec<Flip>,
}

impl Worldline {
    /// Builds the state tiling from an initial state and the flips. Flip times
    /// must be strictly increasing and lie strictly inside `(start, horizon)`.
    pub fn new(
        actor_id: impl Into<String>,
        kind: ActorKind,
        position: f64,
        initial: StateLabel,
        start: f64,
        horizon: f64,
        flips: Vec<Flip>,
    ) -> Self {
        debug_assert!(start < horizon);
        debug_assert!(flips.windows(2).all(|w| w[0].time < w[1].time));
        let mut segments = Vec::with_capacity(flips.len() + 1);
        let mut state = initial;
        let mut t_start = start;
        for flip in &flips {
            segments.push(StateSegment {
                t_start,
                t_end: flip.time,
                state,
            });
            state = state.flipped();
            t_start = flip.time;
        }
        segments.push(StateSegment {
            t_start,
            t_end: horizon,
            state,
        });
        Worldline {
            actor_id: actor_id.into(),
            kind,
            position,
            segments,
            flips,
        }
    }

    pub fn segments(&self) -> &[StateSegment] {
        &self.segments
    }

    pub fn flips(&self) -> &[Flip] {
        &self.flips
    }

    pub fn start(&self) -> f64 {
        self.segments[0].t_start
    }

    pub fn end(&self) -> f64 {
        self.segments[self.segments.len() - 1].t_end
    }

    pub fn initial_state(&self) -> StateLabel {
        self.segments[0].state
    }

    pub fn flip_index(&self, event_id: &str) -> Option<usize> {
        self.flips.iter().position(|f| f.event_id == event_id)
    }

    pub fn state_at(&self, t: f64) -> Result<StateLabel, WorldlineError> {
        if t < self.start() - NULL_EPSILON || t > self.end() + NULL_EPSILON {
            return Err(WorldlineError::OutOfRange {
                actor: self.actor_id.clone(),
                time: t,
            });
        }
        if let Some(flip) = self.flips.iter().find(|f| (f.time - t).abs() <= NULL_EPSILON) {
            return Err(WorldlineError::AtFlipBoundary {
                actor: self.actor_id.clone(),
                time: flip.time,
            });
        }
        let index = self.flips.iter().filter(|f| f.time < t).count();
        Ok(self.segments[index].state)
    }

    /// Segment endpoints as rest-frame points, start to horizon.
    pub fn vertices(&self) -> Vec<SpacetimeEvent> {
        std::iter::once(self.start())
            .chain(self.segments.iter().map(|s| s.t_end))
            .map(|t| SpacetimeEvent::point(t, self.position))
            .collect()
    }
}

/// Whether increasing rest time along a worldline reads as increasing frame time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Forward,
    Reversed,
}

/// Direction in which frame `V` reads an at-rest worldline. Only the t-row of
/// the matrix applied to `(dt, 0)` matters, so the answer is the same for all
/// constant-position worldlines: reversed for `V > 1`, forward otherwise.
pub fn traversal_order(_worldline: &Worldline, velocity: FrameVelocity) -> Traversal {
    let (dt_frame, _) = FrameTransform::new(velocity).apply_coords(1.0, 0.0);
    if dt_frame > 0.0 {
        Traversal::Forward
    } else {
        Traversal::Reversed
    }
}

pub fn transform_polyline(
    transform: &FrameTransform,
    points: &[SpacetimeEvent],
) -> Vec<SpacetimeEvent> {
    points.iter().map(|p| transform.apply(p)).collect()
}

/// Far end of a photon segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentEnd {
    Event(String),
    Horizon,
}

/// A straight photon path between two events (or an event and the horizon),
/// with both endpoints stored in rest-frame coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonSegment {
    pub from_event: String,
    pub to: SegmentEnd,
    pub direction: Direction,
    pub start: (f64, f64),
    pub end: (f64, f64),
}

impl PhotonSegment {
    pub fn start_point(&self) -> SpacetimeEvent {
        SpacetimeEvent::new(self.from_event.clone(), self.start.0, self.start.1)
    }

    pub fn end_point(&self) -> SpacetimeEvent {
        let id = match &self.to {
            SegmentEnd::Event(id) => id.clone(),
            SegmentEnd::Horizon => String::new(),
        };
        SpacetimeEvent::new(id, self.end.0, self.end.1)
    }

    pub fn to_event(&self) -> Option<&str> {
        match &self.to {
            SegmentEnd::Event(id) => Some(id),
            SegmentEnd::Horizon => None,
        }
    }

    /// `|Δx| - |Δt|` in the rest frame; zero for a valid segment.
    pub fn lightlike_defect(&self) -> f64 {
        (self.end.1 - self.start.1).abs() - (self.end.0 - self.start.0).abs()
    }
}
