use thiserror::Error;

/// Library-wide error type. Every variant maps to a stable machine-readable
/// kind string used by the CLI error objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    /// A free parameter fell outside its feasibility interval.
    #[error("infeasible parameter {value}: feasible interval is [{lo}, {hi}]")]
    InfeasibleParameter { value: f64, lo: f64, hi: f64 },

    /// Representation angle too close to 0 or pi/2; the two observables
    /// commute there and the constraint ellipse degenerates to a segment.
    #[error("degenerate representation: angle {angle} is within {tol} of 0 or pi/2")]
    DegenerateRepresentation { angle: f64, tol: f64 },

    #[error("degenerate game: |Delta| = {delta:e} is below tolerance {tol:e}")]
    DegenerateGame { delta: f64, tol: f64 },

    #[error("degenerate payoff direction: omega = 0 (c1 = c3 and c2 = c4)")]
    DegenerateOmega,

    /// The angle equation has no real solution for this payoff matrix.
    #[error("no eigenequilibrium: angle equation gives cos 2theta = {ratio}, outside [-1, 1]")]
    NoEigenequilibrium { ratio: f64 },

    #[error("invalid payoff matrix: {0}")]
    InvalidPayoff(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable kebab-case identifier for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownElement(_) => "unknown-element",
            Error::InvalidLattice(_) => "invalid-lattice",
            Error::InvalidProbability(_) => "invalid-probability",
            Error::InfeasibleParameter { .. } => "infeasible-parameter",
            Error::DegenerateRepresentation { .. } => "degenerate-representation",
            Error::DegenerateGame { .. } => "degenerate-game",
            Error::DegenerateOmega => "degenerate-omega",
            Error::NoEigenequilibrium { .. } => "no-eigenequilibrium",
            Error::InvalidPayoff(_) => "invalid-payoff",
            Error::InvalidConfig(_) => "invalid-config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
