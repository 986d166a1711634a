use thiserror::Error;

pub type Result<T> = std::result::Result<T, KeplerError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeplerError {
    /// The force field is singular at the origin.
    #[error("singular position |r| = {radius:e}{}", step_suffix(*step))]
    SingularPosition { radius: f64, step: Option<usize> },

    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),

    /// Ellipse-specific geometry needs negative total energy.
    #[error("orbit is not bound: H = {energy:?} (need H < 0)")]
    NotBound { energy: f64 },

    #[error("trajectory does not complete a revolution: swept {swept:.6} rad of 2π")]
    InsufficientCoverage { swept: f64 },

    #[error("points are collinear; circle fit is singular")]
    CollinearPoints,

    #[error("lines are parallel; no intersection")]
    ParallelLines,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

fn step_suffix(step: Option<usize>) -> String {
    match step {
        Some(i) => format!(" at step {i}"),
        None => String::new(),
    }
}

impl KeplerError {
    /// Variant name, used as the error tag in CLI and FFI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            KeplerError::SingularPosition { .. } => "SingularPosition",
            KeplerError::DegenerateOrbit(_) => "DegenerateOrbit",
            KeplerError::NotBound { .. } => "NotBound",
            KeplerError::InsufficientCoverage { .. } => "InsufficientCoverage",
            KeplerError::CollinearPoints => "CollinearPoints",
            KeplerError::ParallelLines => "ParallelLines",
            KeplerError::DegenerateConfiguration(_) => "DegenerateConfiguration",
            KeplerError::InvalidInput(_) => "InvalidInput",
        }
    }

    pub(crate) fn at_step(self, index: usize) -> Self {
        match self {
            KeplerError::SingularPosition { radius, .. } => KeplerError::SingularPosition {
                radius,
                step: Some(index),
            },
            other => other,
        }
    }
}
