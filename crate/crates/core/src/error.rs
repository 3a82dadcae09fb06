use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("basis matrix has rank {rank} but {cols} columns; full column rank is required")]
    RankDeficient { rank: usize, cols: usize },

    #[error("trivial lattice (rank 0)")]
    TrivialLattice,

    #[error("lattice is not unimodular: maximal minor on rows {rows:?} equals {value}")]
    NotUnimodular { rows: Vec<usize>, value: BigInt },

    #[error(
        "kernel matrix does not cut out the image lattice (image is not saturated or A*B != 0)"
    )]
    NotSaturated,

    #[error("{what} count {count} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: usize,
        cap: usize,
    },

    #[error("weight is not generic: circuit {circuit:?} has weight zero")]
    NonGenericWeight { circuit: Vec<i64> },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entries do not fit in machine integers")]
    Overflow,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
