use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("inner series has nonzero constant term {0}")]
    NonzeroConstantTerm(f64),

    #[error("constant term {0} is not strictly positive")]
    NonPositiveConstant(f64),

    #[error("constant term is zero, series has no reciprocal")]
    ZeroConstant,

    #[error("linear part is singular (determinant {0})")]
    SingularLinearPart(f64),

    #[error("not divisible by {var}: coefficient of u^{i} v^{j} is {value:e}")]
    NotDivisible {
        var: char,
        i: usize,
        j: usize,
        value: f64,
    },

    #[error("structural violation in component {component}: coefficient of u^{i} v^{j} is {value:e}")]
    StructuralViolation {
        component: &'static str,
        i: usize,
        j: usize,
        value: f64,
    },

    #[error("term u^{i} v^{j} exceeds truncation degree {degree}")]
    TermBeyondDegree { i: usize, j: usize, degree: usize },

    #[error("degenerate frame: {0}")]
    DegenerateFrame(&'static str),

    #[error("point ({u}, {v}) lies on the singular set uv = 0")]
    OnSingularSet { u: f64, v: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("reduction failed after {passes} passes, residual {residual:e}")]
    ReductionFailed { passes: usize, residual: f64 },

    #[error("membership in focal plane {plane} is ambiguous (offset {offset:e})")]
    AmbiguousMembership { plane: u8, offset: f64 },

    #[error("closed-form classification {closed_form} disagrees with recognizer {recognizer}")]
    ClassifierDisagreement {
        closed_form: &'static str,
        recognizer: &'static str,
    },
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ReductionFailed { .. }
                | Error::ClassifierDisagreement { .. }
                | Error::SingularLinearPart(_)
        )
    }
}
