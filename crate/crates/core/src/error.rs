use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("word length {length} exceeds the cap of {cap} letters")]
    WordTooLong { length: u64, cap: u64 },

    #[error("{what}: {count} exceeds the cap of {cap}")]
    SizeCap { what: &'static str, count: u128, cap: u128 },

    #[error("homomorphism is not surjective: image has order {image} in a group of order {target}")]
    NotSurjective { image: u64, target: u64 },

    #[error("endomorphism does not preserve the finite quotient on generator {generator}")]
    Incompatible { generator: usize },

    #[error("not a Seifert matrix of a knot: {0}")]
    InvalidSeifert(String),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    /// True for errors caused by a computation-size cap rather than bad input.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. } | Error::WordTooLong { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
