use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix has rank {rank} but {rows} rows; drop dependent rows first")]
    RankDeficient { rank: usize, rows: usize },
    #[error("search needs {needed} steps, above the enumeration cap {cap}")]
    TooLarge { needed: u128, cap: u64 },
    #[error("every word has zero syndrome, soundness is undefined")]
    TrivialCode,
    #[error("check matrices do not commute (h_x * h_z^T != 0)")]
    NotCommuting,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("index {index} out of range 0..={max}")]
    BadIndex { index: usize, max: usize },
    #[error("random sampling did not reach full rank after {0} attempts")]
    SamplingFailed(usize),
}
