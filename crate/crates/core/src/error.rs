use std::fmt;

use thiserror::Error;

/// Why a [`CenterSpec`](crate::geometry::CenterSpec) was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterDefect {
    /// `f(p) != 0`.
    PointNotOnCenter,
    /// `p` has a nonzero entry at one of the subvariety coordinates.
    PointOffSubvariety(String),
    /// `f` involves a coordinate that is set to zero on the subvariety.
    FunctionUsesSubvarietyVariable(String),
    /// The shift variable is itself one of the subvariety coordinates.
    ShiftInSubvariety(String),
    /// The partial along the shift variable vanishes at `p`; the listed
    /// variables have nonvanishing partials there and may be used instead.
    ShiftPartialVanishes {
        shift: String,
        alternatives: Vec<String>,
    },
    /// Every partial of `f` vanishes at `p`.
    SingularPoint,
    /// The ambient patch carries relations; centers live in open subsets of affine space.
    AmbientHasRelations,
    /// `p` is not in the ambient patch (an inequality vanishes there).
    PointOutsideAmbient,
}

impl fmt::Display for CenterDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterDefect::PointNotOnCenter => write!(f, "f does not vanish at the base point"),
            CenterDefect::PointOffSubvariety(v) => {
                write!(f, "base point has nonzero coordinate {v} on the subvariety")
            }
            CenterDefect::FunctionUsesSubvarietyVariable(v) => {
                write!(f, "f involves subvariety coordinate {v}")
            }
            CenterDefect::ShiftInSubvariety(v) => {
                write!(f, "shift variable {v} is a subvariety coordinate")
            }
            CenterDefect::ShiftPartialVanishes {
                shift,
                alternatives,
            } => write!(
                f,
                "partial of f along {shift} vanishes at the base point; try one of [{}]",
                alternatives.join(", ")
            ),
            CenterDefect::SingularPoint => {
                write!(f, "all partials of f vanish at the base point (singular)")
            }
            CenterDefect::AmbientHasRelations => {
                write!(f, "ambient patch must be an open subset of affine space")
            }
            CenterDefect::PointOutsideAmbient => {
                write!(f, "base point is not in the ambient patch")
            }
        }
    }
}

/// Why a linear projection was not accepted as a local hypersurface model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectionFailure {
    /// The matrix does not have full row rank.
    RankDeficient,
    /// The elimination ideal of the image is not principal.
    NotHypersurface { generators: usize },
    /// No element `d(u) * x - n(u)` with `d` nonzero at the image point.
    NoLocalInverse(String),
    /// The image hypersurface is singular at the image point.
    SingularImage,
    /// The assembled model failed certification.
    VerificationFailed,
}

impl fmt::Display for ProjectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionFailure::RankDeficient => write!(f, "matrix is rank deficient"),
            ProjectionFailure::NotHypersurface { generators } => {
                write!(f, "image ideal has {generators} generators, not one")
            }
            ProjectionFailure::NoLocalInverse(v) => {
                write!(f, "no local inverse for `{v}` at the image point")
            }
            ProjectionFailure::SingularImage => write!(f, "image is singular at the image point"),
            ProjectionFailure::VerificationFailed => write!(f, "local isomorphism not certified"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot shift `{0}` by itself")]
    ShiftOntoItself(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid rational number `{0}`")]
    InvalidNumber(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("budget of {budget} pair reductions exceeded")]
    BudgetExceeded { budget: usize },
    #[error("no rational sample point found for patch: {0}")]
    EmptyPatch(String),
    #[error("not a unit on the patch: {0}")]
    NotAUnit(String),
    #[error("invalid center: {0}")]
    InvalidCenter(CenterDefect),
    #[error("incompatible patches: {0}")]
    IncompatiblePatches(String),
    #[error("zero generator at position {0}")]
    ZeroGenerator(usize),
    #[error("cannot eliminate every variable of the ring")]
    EliminateAll,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("degenerate projection: {0}")]
    Degenerate(ProjectionFailure),
    #[error("no acceptable projection after {attempts} attempts; last failure: {last}")]
    RetryBudgetExhausted {
        attempts: usize,
        last: ProjectionFailure,
    },
    #[error("unknown example `{name}`; available: {}", available.join(", "))]
    UnknownExample {
        name: String,
        available: Vec<String>,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
