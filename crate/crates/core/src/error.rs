use alloc::string::String;

use thiserror::Error;

use crate::atom::Atom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("`{0}` is reserved for the undefined constant")]
    ReservedAtom(String),

    #[error("atom `{0}` is both true and false")]
    OverlappingInterpretation(Atom),

    #[error("atom `{0}` is outside the universe")]
    OutsideUniverse(Atom),

    #[error("argument `{0}` has more than one label")]
    OverlappingLabelling(Atom),

    #[error("labelling domain does not match the argument set")]
    DomainMismatch,

    #[error("attack {source_set} -> {target} is not minimal: {smaller} -> {target} also exists")]
    NonMinimalAttack {
        source_set: String,
        smaller: String,
        target: Atom,
    },

    #[error("attack mentions unknown argument `{0}`")]
    DanglingArgument(Atom),

    #[error("attack on `{0}` has an empty source")]
    EmptyAttackSource(Atom),

    #[error("{what} has {size} atoms, above the enumeration cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("blow-up cap of {cap} statements or rules exceeded")]
    BlowupCap { cap: usize },

    #[error("normalisation did not finish within {cap} steps")]
    StepCapExceeded { cap: usize },

    #[error("step not applicable: {0}")]
    StepNotApplicable(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
