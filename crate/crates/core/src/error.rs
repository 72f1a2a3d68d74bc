use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("not a reduced pattern word: {0:?}")]
    NotReduced(Vec<u32>),
    #[error("invalid pattern word {0:?}")]
    BadPattern(String),
    #[error("entry e_{position} = {value} exceeds bound {bound}")]
    NotInversionSequence { position: usize, value: u32, bound: usize },
    #[error("rank undefined: sequence contains 102")]
    RankUndefined,
    #[error("remark map requires rank 0")]
    RemarkRequiresRankZero,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("filter not supported for this path kind: {0}")]
    UnsupportedFilter(&'static str),
    #[error("series constant term is not a unit")]
    NonUnitConstant,
    #[error("inexact division by x^{0}")]
    InexactXDivision(u32),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("inexact division: {numerator} / {denominator}")]
    InexactDivision { numerator: String, denominator: String },
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),
    #[error("polynomial parse error at offset {offset}: {message}")]
    PolyParse { offset: usize, message: String },
    #[error("invalid sequence id {0:?}")]
    BadSequenceId(String),
    #[error("{id}: unavailable ({reason})")]
    Unavailable { id: String, reason: String },
    #[error("{id}: no offline fixture")]
    NoFixture { id: String },
    #[error("b-file line {line}: {message}")]
    BFileParse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
