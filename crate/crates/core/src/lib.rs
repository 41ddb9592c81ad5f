//! Generalized (sub- and superluminal) Lorentz transformations in 1+1
//! dimensions, and the photon / two-level-atom / mirror processes that are
//! reread in those frames.
//!
//! - [`kinematics`]: the matrices `L_V`, intervals and orderings.
//! - [`worldline`]: at-rest actors with `g`/`e` state histories.
//! - [`scenario`]: rest-frame simulation into an [`EventGraph`].
//! - [`narrative`]: frame-time ordering, emission/absorption roles, slice counts.
//! - [`document`], [`render`], [`cli`]: scenario files, SVG, command line.

pub mod cli;
pub mod document;
pub mod kinematics;
pub mod narrative;
pub mod render;
pub mod scenario;
pub mod worldline;

use thiserror::Error;

pub use document::{parse_scenario, serialize_scenario, DocumentError};
pub use kinematics::{
    classify, compose, interval_in_frame, interval_rest, make_transform, ordering_preserved,
    FrameTransform, FrameVelocity, IntervalClass, KinematicsError, Matrix2, Regime,
    SpacetimeEvent,
};
pub use narrative::{
    event_roles, flip_reading, narrative_report, order_events, photon_count_at, FrameEventRole,
    FrameNarrative, NarrativeError,
};
pub use render::{render_axes, render_scenario, Bounds, DiagramSpec};
pub use scenario::{
    canonical_fig2, canonical_fig3, canonical_fig4, mutual_exclusion_check, simulate, EventGraph,
    Scenario, ScenarioError,
};
pub use worldline::{
    traversal_order, transform_polyline, ActorKind, Direction, PhotonSegment, StateLabel,
    Traversal, Worldline, WorldlineError,
};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Worldline(#[from] WorldlineError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Narrative(#[from] NarrativeError),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Io(String),
}
