use thiserror::Error;

/// Everything that can go wrong while validating, constructing or deciding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative at ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("declared identity does not act as identity on element {0}")]
    BadIdentity(usize),
    #[error("declared zero is not absorbing for element {0}")]
    BadZero(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed table: {0}")]
    Shape(String),

    #[error("identity does not fix element {0}")]
    IdentityActionViolated(usize),
    #[error("action is not compatible: s={s}, t={t}, a={a}")]
    CompatibilityViolated { s: usize, t: usize, a: usize },
    #[error("base point violated by monoid element {s} at act element {a}")]
    BasePointViolated { s: usize, a: usize },
    #[error("a pointed act requires a monoid with zero")]
    PointedNeedsZero,
    #[error("pointed act must contain its base point")]
    EmptyPointed,

    #[error("{what} of size {size} exceeds bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("acts are over different monoids")]
    MixedMonoids,
    #[error("acts mix plain and pointed")]
    MixedPointedness,
    #[error("operation requires a pointed act")]
    NotPointed,
    #[error("member set is not a subact")]
    NotSubact,
    #[error("partition is not compatible with the action")]
    IncompatiblePartition,
    #[error("the initial object has no decomposition")]
    InitialObject,
    #[error("morphisms do not share a codomain")]
    MixedCodomain,
    #[error("map is not a morphism of acts")]
    NotAHomomorphism,
}

impl Error {
    /// Stable variant name used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAssociative { .. } => "NotAssociative",
            Error::BadIdentity(_) => "BadIdentity",
            Error::BadZero(_) => "BadZero",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::Shape(_) => "Shape",
            Error::IdentityActionViolated(_) => "IdentityActionViolated",
            Error::CompatibilityViolated { .. } => "CompatibilityViolated",
            Error::BasePointViolated { .. } => "BasePointViolated",
            Error::PointedNeedsZero => "PointedNeedsZero",
            Error::EmptyPointed => "EmptyPointed",
            Error::TooLarge { .. } => "TooLarge",
            Error::MixedMonoids => "MixedMonoids",
            Error::MixedPointedness => "MixedPointedness",
            Error::NotPointed => "NotPointed",
            Error::NotSubact => "NotSubact",
            Error::IncompatiblePartition => "IncompatiblePartition",
            Error::InitialObject => "InitialObject",
            Error::MixedCodomain => "MixedCodomain",
            Error::NotAHomomorphism => "NotAHomomorphism",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::TooLarge { what, size, bound })
    } else {
        Ok(())
    }
}
