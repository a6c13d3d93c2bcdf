use alloc::string::String;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right} Y variables")]
    VarCountMismatch { left: usize, right: usize },

    #[error("linear form is identically zero")]
    ZeroLinearForm,

    #[error("substitution target for X must not involve X")]
    SubstitutionInvolvesX,

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },

    #[error("denominator factor {factor} has zero X-coefficient; pole is not affine-linear in Y")]
    PoleOnCircleAxis { factor: String },

    #[error("fixed point `{label}` has moment 0; 0 is not a regular value")]
    NonRegularValue { label: String },

    #[error("all fixed points lie on the {side} side of 0")]
    OneSided { side: &'static str },

    #[error("duplicate fixed point label `{label}`")]
    DuplicateLabel { label: String },

    #[error("space has no fixed points")]
    EmptySpace,

    #[error("fixed points must carry at least one tangent weight")]
    ZeroDimension,

    #[error("fixed point `{label}` has {found} weights, expected {expected}")]
    WeightCount { label: String, expected: usize, found: usize },

    #[error("fixed point `{label}`: weight {weight} vanishes on the circle (X-coefficient 0)")]
    WeightVanishesOnCircle { label: String, weight: String },

    #[error("class `{class}` has no restriction at `{label}`")]
    MissingRestriction { class: String, label: String },

    #[error("class `{class}` restricts to `{label}` which is not a fixed point")]
    UnknownLabel { class: String, label: String },

    #[error("class `{class}` is not homogeneous of degree {degree} at `{label}`")]
    NotHomogeneous { class: String, label: String, degree: u32 },

    #[error("basis has no {family} class for `{label}`")]
    MissingBasisClass { family: &'static str, label: String },

    #[error("moments of `{first}` and `{second}` coincide; choose a more generic circle")]
    TiedMomentValues { first: String, second: String },

    #[error("diagonal Euler product at `{label}` is zero")]
    ZeroDiagonal { label: String },

    #[error("class `{class}` is not in the span of the basis with polynomial coefficients (fails at `{label}`)")]
    NotInSpan { class: String, label: String },

    #[error("no generic circle with entries bounded by {bound}")]
    SearchExhausted { bound: u32 },

    #[error("torus data: {msg}")]
    InvalidTorus { msg: String },

    #[error("basis verification failed: {msg}")]
    BasisVerification { msg: String },

    #[error("stage {stage}: unknown class `{name}`")]
    UnknownStageClass { stage: usize, name: String },

    #[error("stage {stage}: class `{name}` has no transfer image")]
    BrokenTransfer { stage: usize, name: String },

    #[error("stage {stage}: {msg}")]
    InvalidStage { stage: usize, msg: String },
}
