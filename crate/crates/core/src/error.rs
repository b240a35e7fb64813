use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid letter {0:?}; expected one of a, b, A, B, F")]
    Letter(char),

    /// The window hit its per-side cap before the query could be answered.
    #[error("unresolved at cap: time {time} needs more than {cap} letters per side")]
    Unresolved { time: i64, cap: u64 },

    #[error("time {0} lies outside the valid region")]
    OutOfRange(i64),

    #[error("vertex {0} touches the truncated boundary of the window")]
    Dirty(u32),

    #[error("size {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },

    #[error("measure mismatch: total masses {0} and {1} differ")]
    MassMismatch(f64, f64),

    #[error("grids are not comparable: {0}")]
    Grid(String),

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
