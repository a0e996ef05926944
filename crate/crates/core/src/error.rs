use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be positive")]
    EmptyType,
    #[error("incomparable universes: rank/degree {0}/{1} vs {2}/{3}")]
    IncomparableUniverses(usize, i64, usize, i64),
    #[error("not a splitting-type Hilbert function: {0}")]
    NotHilbertFunction(String),
    #[error("no such stratum: ell = {ell} outside {lo}..={hi}")]
    NoSuchStratum { ell: i64, lo: i64, hi: i64 },
    #[error("Brill-Noether locus is all of Pic (r = {r} <= d - g = {excess})")]
    WholePicard { r: i64, excess: i64 },
    #[error("poset too large: more than {0} nodes")]
    PosetTooLarge(usize),
    #[error("{0} is not a node of the poset")]
    NotANode(String),
    #[error("splitting type {found} does not live in the universe of rank {rank}, degree {degree}")]
    UniverseMismatch {
        found: String,
        rank: usize,
        degree: i64,
    },
    #[error("non-unit divisor: constant term is zero")]
    NonUnitDivisor,
    #[error("not an extreme-summand type: {0}")]
    NotExtremeSummand(String),
    #[error("coefficient not computable by this module: {0}")]
    NotComputable(String),
    #[error("not zero-dimensional: u = {u}, g = {g}")]
    NotZeroDimensional { u: u64, g: u64 },
    #[error("inconsistent class: {0} is not a non-negative integer")]
    InconsistentClass(String),
    #[error("pullback requires k | d (k = {k}, d = {d})")]
    NotPullbackDegree { k: i64, d: i64 },
    #[error("compatibility undefined: {0}")]
    CompatibilityUndefined(String),
    #[error("invalid endomorphism model: {0}")]
    InvalidModel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow")]
    Overflow,
}
