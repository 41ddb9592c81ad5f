//! Generalized Lorentz transformations in 1+1 dimensions.
//!
//! Units are chosen so that c = 1. A frame velocity `V` with `|V| < 1` gives the
//! ordinary boost; `|V| > 1` gives the superluminal member of the family, whose
//! overall sign is chosen so that the inverse of `L_V` is always `L_{-V}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Guard band around `|V| = 1`: velocities with `|1 - V²|` below this are rejected.
pub const REGIME_EPSILON: f64 = 1e-9;

/// Absolute threshold on `ds²` (and on time differences) treated as zero.
pub const NULL_EPSILON: f64 = 1e-9;

/// Row-major 2×2 matrix acting on `(t, x)` column vectors.
pub type Matrix2 = [[f64; 2]; 2];

pub const IDENTITY: Matrix2 = [[1.0, 0.0], [0.0, 1.0]];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("frame velocity {0} is within {REGIME_EPSILON:e} of the light speed")]
    NearLightSpeed(f64),
    #[error("frame velocity must be finite, got {0}")]
    NotFinite(f64),
    #[error("events have equal rest-frame times; ordering is undefined")]
    DegenerateOrder,
    #[error("cannot parse velocity `{0}`")]
    BadVelocity(String),
}

/// Speed regime of a frame velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Subluminal,
    Superluminal,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Subluminal => "subluminal",
            Regime::Superluminal => "superluminal",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated frame velocity, in units of c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVelocity(f64);

impl FrameVelocity {
    pub const REST: FrameVelocity = FrameVelocity(0.0);

    pub fn new(value: f64) -> Result<Self, KinematicsError> {
        if !value.is_finite() {
            return Err(KinematicsError::NotFinite(value));
        }
        if (1.0 - value * value).abs() < REGIME_EPSILON {
            return Err(KinematicsError::NearLightSpeed(value));
        }
        Ok(FrameVelocity(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        if self.0.abs() < 1.0 {
            Regime::Subluminal
        } else {
            Regime::Superluminal
        }
    }

    pub fn negated(self) -> FrameVelocity {
        FrameVelocity(-self.0)
    }
}

/// Parses a decimal (`0.3`, `-2`) or a fraction (`10/3`, `-1/2`) into a float.
pub fn parse_real(text: &str) -> Result<f64, KinematicsError> {
    let bad = || KinematicsError::BadVelocity(text.to_string());
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0.0 {
                return Err(bad());
            }
            num / den
        }
        None => text.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

impl FromStr for FrameVelocity {
    type Err = KinematicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameVelocity::new(parse_real(s)?)
    }
}

/// A labeled point `(t, x)` in some frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeEvent {
    pub id: String,
    pub t: f64,
    pub x: f64,
}

impl SpacetimeEvent {
    pub fn new(id: impl Into<String>, t: f64, x: f64) -> Self {
        SpacetimeEvent { id: id.into(), t, x }
    }

    /// Unlabeled point, for geometry that is not a named event.
    pub fn point(t: f64, x: f64) -> Self {
        SpacetimeEvent::new("", t, x)
    }
}

/// The matrix `L_V` together with the velocity it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTransform {
    velocity: FrameVelocity,
    matrix: Matrix2,
}

impl FrameTransform {
    pub fn new(velocity: FrameVelocity) -> Self {
        let v = velocity.value();
        // "+" for V < 1 and "-" for V > 1, read literally, so V < -1 keeps "+".
        let sign = if v < 1.0 { 1.0 } else { -1.0 };
        let factor = sign / (1.0 - v * v).abs().sqrt();
        FrameTransform {
            velocity,
            matrix: [[factor, -v * factor], [-v * factor, factor]],
        }
    }

    /// Convenience constructor from a raw velocity value.
    pub fn from_velocity(value: f64) -> Result<Self, KinematicsError> {
        Ok(FrameTransform::new(FrameVelocity::new(value)?))
    }

    pub fn identity() -> Self {
        FrameTransform::new(FrameVelocity::REST)
    }

    pub fn velocity(&self) -> FrameVelocity {
        self.velocity
    }

    pub fn regime(&self) -> Regime {
        self.velocity.regime()
    }

    pub fn matrix(&self) -> Matrix2 {
        self.matrix
    }

    /// Signed scalar in front of `[[1, -V], [-V, 1]]`.
    pub fn prefactor(&self) -> f64 {
        self.matrix[0][0]
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.matrix)
    }

    pub fn apply_coords(&self, t: f64, x: f64) -> (f64, f64) {
        let m = &self.matrix;
        (m[0][0] * t + m[0][1] * x, m[1][0] * t + m[1][1] * x)
    }

    pub fn apply(&self, event: &SpacetimeEvent) -> SpacetimeEvent {
        let (t, x) = self.apply_coords(event.t, event.x);
        SpacetimeEvent {
            id: event.id.clone(),
            t,
            x,
        }
    }

    pub fn inverse(&self) -> FrameTransform {
        FrameTransform::new(self.velocity.negated())
    }
}

pub fn make_transform(velocity: FrameVelocity) -> FrameTransform {
    FrameTransform::new(velocity)
}

/// Raw matrix product `A·B`. No claim is made that the result is some `L_W`.
pub fn compose(a: &FrameTransform, b: &FrameTransform) -> Matrix2 {
    matmul(&a.matrix, &b.matrix)
}

pub fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn determinant(m: &Matrix2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Largest absolute entrywise difference between two matrices.
pub fn max_abs_diff(a: &Matrix2, b: &Matrix2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

/// Rest-frame interval `(Δt)² - (Δx)²`.
pub fn interval_rest(e1: &SpacetimeEvent, e2: &SpacetimeEvent) -> f64 {
    let dt = e2.t - e1.t;
    let dx = e2.x - e1.x;
    dt * dt - dx * dx
}

/// The invariant interval written in frame coordinates: `dt² - dx²` for a
/// subluminal frame, `dx² - dt²` for a superluminal one.
pub fn interval_in_frame(dt: f64, dx: f64, regime: Regime) -> f64 {
    match regime {
        Regime::Subluminal => dt * dt - dx * dx,
        Regime::Superluminal => dx * dx - dt * dt,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

impl IntervalClass {
    pub fn from_interval(ds2: f64) -> Self {
        if ds2.abs() <= NULL_EPSILON {
            IntervalClass::Lightlike
        } else if ds2 > 0.0 {
            IntervalClass::Timelike
        } else {
            IntervalClass::Spacelike
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntervalClass::Timelike => "timelike",
            IntervalClass::Lightlike => "lightlike",
            IntervalClass::Spacelike => "spacelike",
        }
    }
}

impl fmt::Display for IntervalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(e1: &SpacetimeEvent, e2: &SpacetimeEvent) -> IntervalClass {
    IntervalClass::from_interval(interval_rest(e1, e2))
}

/// Whether the frame `V` keeps the rest-frame time order of two events.
pub fn ordering_preserved(
    e1: &SpacetimeEvent,
    e2: &SpacetimeEvent,
    velocity: FrameVelocity,
) -> Result<bool, KinematicsError> {
    let dt = e2.t - e1.t;
    if dt.abs() <= NULL_EPSILON {
        return Err(KinematicsError::DegenerateOrder);
    }
    let transform = FrameTransform::new(velocity);
    let (dt_frame, _) = transform.apply_coords(dt, e2.x - e1.x);
    Ok(dt.signum() == dt_frame.signum() && dt_frame != 0.0)
}
