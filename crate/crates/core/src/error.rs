use thiserror::Error;

/// Errors raised when an input cannot be interpreted at all.
///
/// Failed mathematical checks (a non-commuting square, a sieve that is not
/// stable) are reported through the verdict types of each module, not here.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("ill-typed word: {0}")]
    IllTyped(String),
    #[error("family has mixed targets: `{0}` and `{1}`")]
    MixedTargets(String, String),
    #[error("missing fiber product of `{0}` and `{1}`")]
    MissingFiberProduct(String, String),
    #[error("site axioms violated: {0}")]
    InvalidSite(String),
    #[error("not a poset: {0}")]
    NotPoset(String),
    #[error("incoherent pseudofunctor: {0}")]
    Incoherent(String),
    #[error("chain endpoint mismatch: {0}")]
    ChainMismatch(String),
    #[error("enumeration limit of {0} exceeded")]
    TooLarge(usize),
    #[error("inconclusive: rewriting bound {bound} reached ({detail})")]
    Inconclusive { bound: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
