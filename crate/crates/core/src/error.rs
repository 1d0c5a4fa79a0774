use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient at frequency {k} is not finite")]
    NonFiniteCoefficient { k: i64 },

    #[error("operation requires a nonzero coefficient sequence")]
    ZeroSequence,

    #[error("weight sequence has no nonzero value at frequency {k}")]
    ZeroWeight { k: i64 },

    #[error("frequency {k} lies outside the admissible band |k| <= {band}")]
    OutOfBand { k: i64, band: u64 },

    #[error("order {0} must be a positive integer")]
    NonIntegerOrder(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sample sequence is empty")]
    EmptySamples,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
