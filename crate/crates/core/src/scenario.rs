//! Rest-frame processes: photons leave excited atoms at speed 1, mirrors
//! reflect them, ground-state atoms absorb them.
//!
//! Each actor may be restricted to photons travelling in one direction, which
//! is how two detectors can sit on the outgoing and the returning leg of the
//! same path in one spatial dimension.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kinematics::SpacetimeEvent;
use crate::worldline::{
    ActorKind, Direction, Flip, PhotonSegment, SegmentEnd, StateLabel, Worldline,
};

/// Time margin before the earliest emission (or 0) at which worldlines start.
pub const START_MARGIN: f64 = 1.0;

const TIME_TIE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("photon emitted by `{emitter}` would be absorbed by `{absorber}` at its own emission event")]
    SelfAbsorption { emitter: String, absorber: String },
    #[error("no TLA named `{0}`")]
    UnknownActor(String),
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::InvalidScenario(msg.into())
}

/// Which photons an actor interacts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coupling {
    Both,
    Only(Direction),
}

impl Coupling {
    pub fn accepts(self, direction: Direction) -> bool {
        match self {
            Coupling::Both => true,
            Coupling::Only(d) => d == direction,
        }
    }

    fn overlaps(self, other: Coupling) -> bool {
        match (self, other) {
            (Coupling::Only(a), Coupling::Only(b)) => a == b,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActorSpec {
    pub id: String,
    pub kind: ActorKind,
    pub position: f64,
    pub initial: StateLabel,
    pub coupling: Coupling,
}

impl ActorSpec {
    pub fn tla(id: &str, position: f64, initial: StateLabel) -> Self {
        ActorSpec {
            id: id.to_string(),
            kind: ActorKind::Tla,
            position,
            initial,
            coupling: Coupling::Both,
        }
    }

    pub fn mirror(id: &str, position: f64, initial: StateLabel) -> Self {
        ActorSpec {
            kind: ActorKind::Mirror,
            ..ActorSpec::tla(id, position, initial)
        }
    }

    pub fn on_path(mut self, direction: Direction) -> Self {
        self.coupling = Coupling::Only(direction);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmissionSpec {
    pub actor_id: String,
    pub time: f64,
    pub direction: Direction,
}

impl EmissionSpec {
    pub fn new(actor_id: &str, time: f64, direction: Direction) -> Self {
        EmissionSpec {
            actor_id: actor_id.to_string(),
            time,
            direction,
        }
    }
}

/// A validated process description in the rest frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    actors: Vec<ActorSpec>,
    emissions: Vec<EmissionSpec>,
    horizon: f64,
}

impl Scenario {
    pub fn new(
        actors: Vec<ActorSpec>,
        emissions: Vec<EmissionSpec>,
        horizon: f64,
    ) -> Result<Self, ScenarioError> {
        for (i, a) in actors.iter().enumerate() {
            if a.id.is_empty() {
                return Err(invalid("actor id must not be empty"));
            }
            if !a.position.is_finite() {
                return Err(invalid(format!("actor `{}` has a non-finite position", a.id)));
            }
            for b in &actors[..i] {
                if a.id == b.id {
                    return Err(invalid(format!("duplicate actor id `{}`", a.id)));
                }
                if a.position == b.position && a.coupling.overlaps(b.coupling) {
                    return Err(invalid(format!(
                        "actors `{}` and `{}` share position {} on the same path",
                        b.id, a.id, a.position
                    )));
                }
            }
        }
        if !horizon.is_finite() {
            return Err(invalid("horizon must be finite"));
        }
        for e in &emissions {
            let Some(actor) = actors.iter().find(|a| a.id == e.actor_id) else {
                return Err(invalid(format!("emission from unknown actor `{}`", e.actor_id)));
            };
            if actor.kind != ActorKind::Tla {
                return Err(invalid(format!("`{}` is a mirror and cannot emit", e.actor_id)));
            }
            if !e.time.is_finite() || e.time >= horizon {
                return Err(invalid(format!(
                    "emission from `{}` at {} is not before the horizon {}",
                    e.actor_id, e.time, horizon
                )));
            }
        }
        for actor in &actors {
            let first = emissions
                .iter()
                .filter(|e| e.actor_id == actor.id)
                .min_by(|a, b| a.time.total_cmp(&b.time));
            if first.is_some() && actor.initial != StateLabel::E {
                return Err(invalid(format!(
                    "emitter `{}` is not in the excited state e",
                    actor.id
                )));
            }
        }
        Ok(Scenario {
            actors,
            emissions,
            horizon,
        })
    }

    pub fn actors(&self) -> &[ActorSpec] {
        &self.actors
    }

    pub fn emissions(&self) -> &[EmissionSpec] {
        &self.emissions
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn actor(&self, id: &str) -> Option<&ActorSpec> {
        self.actors.iter().find(|a| a.id == id)
    }

    /// Rest time at which every worldline begins.
    pub fn start_time(&self) -> f64 {
        let earliest = self
            .emissions
            .iter()
            .map(|e| e.time)
            .fold(0.0, f64::min);
        earliest - START_MARGIN
    }
}

/// What an event is in the rest-frame reading of the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventRole {
    EmissionSite,
    ReflectionSite,
    AbsorptionSite,
}

impl EventRole {
    pub fn as_str(self) -> &'static str {
        match self {
            EventRole::EmissionSite => "emission",
            EventRole::ReflectionSite => "reflection",
            EventRole::AbsorptionSite => "absorption",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphEvent {
    pub event: SpacetimeEvent,
    pub actor_id: String,
    pub role: EventRole,
}

/// Frame-independent record of a simulated process.
#[derive(Debug, Clone, PartialEq)]
pub struct EventGraph {
    pub events: Vec<GraphEvent>,
    pub photon_segments: Vec<PhotonSegment>,
    pub worldlines: Vec<Worldline>,
    pub start: f64,
    pub horizon: f64,
}

impl EventGraph {
    pub fn event(&self, id: &str) -> Option<&GraphEvent> {
        self.events.iter().find(|e| e.event.id == id)
    }

    pub fn worldline(&self, actor_id: &str) -> Option<&Worldline> {
        self.worldlines.iter().find(|w| w.actor_id == actor_id)
    }

    pub fn flip_count(&self) -> usize {
        self.worldlines.iter().map(|w| w.flips().len()).sum()
    }

    /// Number of photon segments having `event_id` as an endpoint.
    pub fn incident_segments(&self, event_id: &str) -> usize {
        self.photon_segments
            .iter()
            .filter(|s| s.from_event == event_id || s.to_event() == Some(event_id))
            .count()
    }

    /// Checks the structural invariants of a graph; returns the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, e) in self.events.iter().enumerate() {
            if self.events[..i].iter().any(|p| p.event.id == e.event.id) {
                return Err(format!("duplicate event id `{}`", e.event.id));
            }
            let Some(w) = self.worldline(&e.actor_id) else {
                return Err(format!("event `{}` has no worldline", e.event.id));
            };
            if w.position != e.event.x || w.flip_index(&e.event.id).is_none() {
                return Err(format!("event `{}` is not a flip on `{}`", e.event.id, w.actor_id));
            }
            let expected = match w.kind {
                ActorKind::Tla => 1,
                ActorKind::Mirror => 2,
            };
            if self.incident_segments(&e.event.id) != expected {
                return Err(format!("event `{}` has wrong segment incidence", e.event.id));
            }
        }
        if self.flip_count() != self.events.len() {
            return Err("flip count differs from event count".into());
        }
        for s in &self.photon_segments {
            if s.lightlike_defect().abs() > 1e-12 {
                return Err(format!("segment from `{}` is not lightlike", s.from_event));
            }
            if (s.end.1 - s.start.1) * s.direction.sign() < 0.0 {
                return Err(format!("segment from `{}` runs against its direction", s.from_event));
            }
            let from = self.event(&s.from_event).ok_or("dangling segment start")?;
            if (from.event.t, from.event.x) != s.start {
                return Err(format!("segment from `{}` is detached", s.from_event));
            }
            match &s.to {
                SegmentEnd::Event(id) => {
                    let to = self.event(id).ok_or("dangling segment end")?;
                    if (to.event.t, to.event.x) != s.end {
                        return Err(format!("segment into `{id}` is detached"));
                    }
                }
                SegmentEnd::Horizon => {
                    if s.end.0 != self.horizon {
                        return Err("horizon segment does not end at the horizon".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic plain-text form: events, then photon segments, then worldlines.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# events\tid\tactor\trole\tt\tx");
        for e in &self.events {
            let _ = writeln!(
                out,
                "event\t{}\t{}\t{}\t{:.6}\t{:.6}",
                e.event.id,
                e.actor_id,
                e.role.as_str(),
                fixed(e.event.t),
                fixed(e.event.x)
            );
        }
        let _ = writeln!(out, "# photons\tfrom\tto\tdir\tt0\tx0\tt1\tx1");
        for s in &self.photon_segments {
            let _ = writeln!(
                out,
                "photon\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                s.from_event,
                s.to_event().unwrap_or("HORIZON"),
                s.direction,
                fixed(s.start.0),
                fixed(s.start.1),
                fixed(s.end.0),
                fixed(s.end.1)
            );
        }
        let _ = writeln!(out, "# worldlines\tactor\tkind\tx\tflips\tstates");
        for w in &self.worldlines {
            let flips: Vec<&str> = w.flips().iter().map(|f| f.event_id.as_str()).collect();
            let states: Vec<&str> = w.segments().iter().map(|s| s.state.as_str()).collect();
            let _ = writeln!(
                out,
                "worldline\t{}\t{}\t{:.6}\t{}\t{}",
                w.actor_id,
                w.kind.as_str(),
                fixed(w.position),
                if flips.is_empty() { "-".to_string() } else { flips.join(",") },
                states.join(",")
            );
        }
        out
    }
}

/// Maps `-0.0` (and tiny negatives that would print as `-0.000000`) to `0.0`.
pub(crate) fn fixed(v: f64) -> f64 {
    if v.abs() < 5e-7 {
        0.0
    } else {
        v
    }
}

#[derive(Debug, Clone)]
struct Photon {
    origin_event: String,
    origin: (f64, f64),
    direction: Direction,
    /// Point up to which the path has been resolved (origin or last pass-through).
    cursor: (f64, f64),
}

enum Next {
    Emission(usize),
    Crossing { photon: usize, actor: usize },
}

struct Simulation<'a> {
    scenario: &'a Scenario,
    states: Vec<StateLabel>,
    flips: Vec<Vec<Flip>>,
    events: Vec<GraphEvent>,
    segments: Vec<PhotonSegment>,
    photons: Vec<Photon>,
}

impl<'a> Simulation<'a> {
    fn new(scenario: &'a Scenario) -> Self {
        Simulation {
            scenario,
            states: scenario.actors.iter().map(|a| a.initial).collect(),
            flips: vec![Vec::new(); scenario.actors.len()],
            events: Vec::new(),
            segments: Vec::new(),
            photons: Vec::new(),
        }
    }

    /// First actor ahead of the photon's cursor that couples to its direction.
    fn next_actor(&self, photon: &Photon) -> Option<(usize, f64)> {
        let sign = photon.direction.sign();
        self.scenario
            .actors
            .iter()
            .enumerate()
            .filter(|(_, a)| a.coupling.accepts(photon.direction))
            .map(|(i, a)| (i, (a.position - photon.cursor.1) * sign))
            .filter(|&(_, dist)| dist > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, dist)| (i, photon.cursor.0 + dist))
    }

    fn flip(&mut self, actor: usize, t: f64, role: EventRole) -> String {
        let spec = &self.scenario.actors[actor];
        let n = self.flips[actor].len();
        let id = if n == 0 {
            spec.id.clone()
        } else {
            format!("{}.{}", spec.id, n + 1)
        };
        self.flips[actor].push(Flip {
            event_id: id.clone(),
            time: t,
        });
        self.states[actor] = self.states[actor].flipped();
        self.events.push(GraphEvent {
            event: SpacetimeEvent::new(id.clone(), t, spec.position),
            actor_id: spec.id.clone(),
            role,
        });
        id
    }

    fn close(&mut self, photon: &Photon, to: SegmentEnd, end: (f64, f64)) {
        self.segments.push(PhotonSegment {
            from_event: photon.origin_event.clone(),
            to,
            direction: photon.direction,
            start: photon.origin,
            end,
        });
    }

    fn run(mut self) -> Result<EventGraph, ScenarioError> {
        let scenario = self.scenario;
        let horizon = scenario.horizon;
        let mut pending: Vec<usize> = (0..scenario.emissions.len()).collect();
        pending.sort_by(|&a, &b| {
            scenario.emissions[a]
                .time
                .total_cmp(&scenario.emissions[b].time)
        });
        let mut pending = pending.into_iter().peekable();

        loop {
            let mut candidates: Vec<(f64, usize, Next)> = Vec::new();
            if let Some(&i) = pending.peek() {
                let e = &scenario.emissions[i];
                let actor = scenario.actors.iter().position(|a| a.id == e.actor_id).unwrap();
                candidates.push((e.time, actor, Next::Emission(i)));
            }
            for (p, photon) in self.photons.iter().enumerate() {
                if let Some((actor, t)) = self.next_actor(photon) {
                    if t < horizon {
                        candidates.push((t, actor, Next::Crossing { photon: p, actor }));
                    }
                }
            }
            if candidates.is_empty() {
                break;
            }
            candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
            let first_t = candidates[0].0;
            let tied: Vec<usize> = candidates
                .iter()
                .take_while(|c| (c.0 - first_t).abs() <= TIME_TIE)
                .map(|c| c.1)
                .collect();
            if tied.iter().skip(1).any(|&a| a == tied[0]) {
                return Err(invalid(format!(
                    "simultaneous interactions at actor `{}` at t = {}",
                    scenario.actors[tied[0]].id, first_t
                )));
            }
            let (t, _, next) = candidates.swap_remove(0);
            match next {
                Next::Emission(i) => {
                    pending.next();
                    let spec = &scenario.emissions[i];
                    let actor = scenario.actors.iter().position(|a| a.id == spec.actor_id).unwrap();
                    if self.states[actor] != StateLabel::E {
                        return Err(invalid(format!(
                            "emitter `{}` is not excited at t = {}",
                            spec.actor_id, spec.time
                        )));
                    }
                    let x = scenario.actors[actor].position;
                    if let Some(other) = scenario.actors.iter().find(|a| {
                        a.id != spec.actor_id && a.position == x && a.coupling.accepts(spec.direction)
                    }) {
                        return Err(ScenarioError::SelfAbsorption {
                            emitter: spec.actor_id.clone(),
                            absorber: other.id.clone(),
                        });
                    }
                    let id = self.flip(actor, t, EventRole::EmissionSite);
                    self.photons.push(Photon {
                        origin_event: id,
                        origin: (t, x),
                        direction: spec.direction,
                        cursor: (t, x),
                    });
                }
                Next::Crossing { photon, actor } => {
                    let spec = &scenario.actors[actor];
                    let here = (t, spec.position);
                    match (spec.kind, self.states[actor]) {
                        (ActorKind::Mirror, _) => {
                            let ph = self.photons.swap_remove(photon);
                            let id = self.flip(actor, t, EventRole::ReflectionSite);
                            self.close(&ph, SegmentEnd::Event(id.clone()), here);
                            self.photons.push(Photon {
                                origin_event: id,
                                origin: here,
                                direction: ph.direction.reversed(),
                                cursor: here,
                            });
                        }
                        (ActorKind::Tla, StateLabel::G) => {
                            let ph = self.photons.swap_remove(photon);
                            let id = self.flip(actor, t, EventRole::AbsorptionSite);
                            self.close(&ph, SegmentEnd::Event(id), here);
                        }
                        (ActorKind::Tla, StateLabel::E) => {
                            self.photons[photon].cursor = here;
                        }
                    }
                }
            }
        }

        let in_flight = std::mem::take(&mut self.photons);
        for ph in &in_flight {
            let end = (horizon, ph.origin.1 + ph.direction.sign() * (horizon - ph.origin.0));
            self.close(ph, SegmentEnd::Horizon, end);
        }
        self.segments.sort_by(|a, b| {
            a.start
                .0
                .total_cmp(&b.start.0)
                .then_with(|| a.from_event.cmp(&b.from_event))
        });

        let start = scenario.start_time();
        let worldlines = scenario
            .actors
            .iter()
            .zip(self.flips)
            .map(|(a, flips)| {
                Worldline::new(a.id.clone(), a.kind, a.position, a.initial, start, horizon, flips)
            })
            .collect();
        Ok(EventGraph {
            events: self.events,
            photon_segments: self.segments,
            worldlines,
            start,
            horizon,
        })
    }
}

/// Runs the process to the horizon.
pub fn simulate(scenario: &Scenario) -> Result<EventGraph, ScenarioError> {
    Simulation::new(scenario).run()
}

const CANONICAL_HORIZON: f64 = 6.0;

/// Emitter A at 0 sends a photon toward the mirror at -2; it returns to B at -1.
pub fn canonical_fig2() -> Scenario {
    Scenario::new(
        vec![
            ActorSpec::tla("A", 0.0, StateLabel::E),
            ActorSpec::mirror("R", -2.0, StateLabel::G),
            ActorSpec::tla("B", -1.0, StateLabel::G).on_path(Direction::Plus),
        ],
        vec![EmissionSpec::new("A", 0.0, Direction::Minus)],
        CANONICAL_HORIZON,
    )
    .expect("canonical scenario is valid")
}

/// Fig. 2 plus a ground-state detector C on the outgoing leg, which catches the photon.
pub fn canonical_fig3() -> Scenario {
    Scenario::new(
        vec![
            ActorSpec::tla("A", 0.0, StateLabel::E),
            ActorSpec::mirror("R", -2.0, StateLabel::G),
            ActorSpec::tla("B", -1.0, StateLabel::G).on_path(Direction::Plus),
            ActorSpec::tla("C", -1.0, StateLabel::G).on_path(Direction::Minus),
            ActorSpec::tla("D", -1.5, StateLabel::G).on_path(Direction::Plus),
        ],
        vec![EmissionSpec::new("A", 0.0, Direction::Minus)],
        CANONICAL_HORIZON,
    )
    .expect("canonical scenario is valid")
}

/// Detector D on the return leg catches the reflected photon; C is excited and transparent.
pub fn canonical_fig4() -> Scenario {
    Scenario::new(
        vec![
            ActorSpec::tla("A", 0.0, StateLabel::E),
            ActorSpec::mirror("R", -2.0, StateLabel::G),
            ActorSpec::tla("B", -1.0, StateLabel::G).on_path(Direction::Plus),
            ActorSpec::tla("C", -1.0, StateLabel::E).on_path(Direction::Minus),
            ActorSpec::tla("D", -1.5, StateLabel::G).on_path(Direction::Plus),
        ],
        vec![EmissionSpec::new("A", 0.0, Direction::Minus)],
        CANONICAL_HORIZON,
    )
    .expect("canonical scenario is valid")
}

/// Looks up a canonical scenario by name (`fig2`, `fig3`, `fig4`).
pub fn builtin(name: &str) -> Option<Scenario> {
    match name {
        "fig2" => Some(canonical_fig2()),
        "fig3" => Some(canonical_fig3()),
        "fig4" => Some(canonical_fig4()),
        _ => None,
    }
}

/// True unless both detectors flipped. An id absent from the graph is an
/// empty detector slot and counts as not flipped.
pub fn mutual_exclusion_check(
    graph: &EventGraph,
    c_id: &str,
    d_id: &str,
) -> Result<bool, ScenarioError> {
    let flipped = |id: &str| -> Result<bool, ScenarioError> {
        match graph.worldline(id) {
            None => Ok(false),
            Some(w) if w.kind != ActorKind::Tla => Err(ScenarioError::UnknownActor(id.to_string())),
            Some(w) => Ok(!w.flips().is_empty()),
        }
    };
    Ok(!(flipped(c_id)? && flipped(d_id)?))
}
