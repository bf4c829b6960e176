use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exponent vectors must have at least one coordinate")]
    EmptyVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} has an infinite entry where a finite one is required")]
    InfiniteEntry(String),
    #[error("cannot subtract {sub} from {from}: not componentwise below")]
    NotBelow { sub: String, from: String },
    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,
    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,
    #[error("operation is undefined for the empty multicomplex")]
    EmptyMulticomplex,
    #[error("variable supports overlap")]
    OverlappingBlocks,
    #[error("{0} is not a face")]
    NotAFace(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("multicomplex has a facet outside {{0,inf}}^n: {0}")]
    NotSquarefreeFacet(String),
    #[error("not a permutation of the facets: {0}")]
    NotAPermutation(String),
    #[error("polarization undefined for facet {facet}: entry {entry} at coordinate {coord} reaches t = {block}")]
    PolarizationAnomaly { facet: String, coord: usize, entry: u32, block: u32 },
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
