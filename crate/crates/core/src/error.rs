//! Error types, one enum per module plus a crate-level wrapper.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("group closure has {found} elements, expected {expected}")]
    ClosureSize { expected: usize, found: usize },
    #[error("element is not in the finite group: {0}")]
    NotInGroup(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeylError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("letter {0} is not in M = {{aba, bacb, bcb, cba, η}}")]
    NotInM(String),
    #[error("letter {0} has no refinement table")]
    UnsupportedLetter(String),
    #[error("vanishing order of minor {minor} for {letter} is ambiguous (slope {slope:.3})")]
    AmbiguousOrder { letter: String, minor: usize, slope: f64 },
    #[error("letter multiplicity of {0} depends on the cell point")]
    InconsistentOrder(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BruhatError {
    #[error("numerical rank is ambiguous: singular value {value:.3e} within the guard band of tol {tol:.1e}")]
    RankAmbiguous { value: f64, tol: f64 },
    #[error("rank pattern does not come from a permutation")]
    InvalidRankPattern,
    #[error("spin tracking step too large ({0:.3})")]
    StepTooLarge(f64),
    #[error("germ probes at two scales disagree: {0} vs {1}")]
    NotConvergent(String, String),
    #[error("germ did not reach the open cell (landed in {0})")]
    NotOpenCell(String),
    #[error("point lies outside the chart")]
    OutsideChart,
    #[error("totally positive factorization failed (pivot {0:.3e})")]
    FactorizationFailed(f64),
    #[error("invalid signed representative: {0}")]
    InvalidRep(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curvature {index} is not positive at t = {t}")]
    NonPositiveCurvature { index: usize, t: f64 },
    #[error("renormalization drift {drift:.3e} exceeds 1e-6 at t = {t}")]
    StepRejected { t: f64, drift: f64 },
    #[error("curve is not locally convex near t = {t} (det = {det:.3e})")]
    NotLocallyConvex { t: f64, det: f64 },
    #[error("endpoint t = {0} is singular")]
    BoundarySingular(f64),
    #[error("root bracketing failed: {0}")]
    RootBracketFailed(String),
    #[error("near-zero minor at t = {t} (|m| = {value:.3e}) but the frame classifies into the open cell")]
    SpuriousSingularity { t: f64, value: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrataError {
    #[error("invalid polytope point: {0}")]
    InvalidPoint(String),
    #[error("index set contains ({0},{1}) outside the grid")]
    InvalidIndexSet(usize, usize),
    #[error("merge event of size {0} is not a triple")]
    NonTripleMerge(usize),
    #[error("word has no eligible letter with index {0}")]
    IndexOutOfRange(usize),
    #[error("not a central element: {0}")]
    NotCentral(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("cannot parse coefficient {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("coefficient is not 1-periodic (defect {0:.3e})")]
    NotPeriodic(f64),
    #[error("integration failed at t = {t}: {reason}")]
    IntegrationFailed { t: f64, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

impl Error {
    /// Whether the failure comes from numerical ambiguity rather than
    /// invalid input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Weyl(e) => matches!(e, WeylError::AmbiguousOrder { .. } | WeylError::InconsistentOrder(_)),
            Error::Bruhat(e) => bruhat_numerical(e),
            Error::Curve(e) => match e {
                CurveError::StepRejected { .. }
                | CurveError::RootBracketFailed(_)
                | CurveError::SpuriousSingularity { .. } => true,
                CurveError::Bruhat(b) => bruhat_numerical(b),
                _ => false,
            },
            Error::Monodromy(MonodromyError::IntegrationFailed { .. }) => true,
            _ => false,
        }
    }
}

fn bruhat_numerical(e: &BruhatError) -> bool {
    matches!(
        e,
        BruhatError::RankAmbiguous { .. }
            | BruhatError::InvalidRankPattern
            | BruhatError::StepTooLarge(_)
            | BruhatError::NotConvergent(..)
            | BruhatError::NotOpenCell(_)
            | BruhatError::FactorizationFailed(_)
    )
}

pub type Result<T> = std::result::Result<T, Error>;
