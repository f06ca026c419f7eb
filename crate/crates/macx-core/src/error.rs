use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {v} out of range 1..={m}")]
    VertexOutOfRange { v: u32, m: u32 },

    #[error("vertex {v} appears in no face")]
    GhostVertex { v: u32 },

    #[error("vertex count {m} exceeds the maximum of {max}")]
    MTooLarge { m: u32, max: u32 },

    #[error("{perm:?} is not a permutation of 1..={m}")]
    InvalidPermutation { perm: Vec<u32>, m: u32 },

    #[error("boundary composition D_{degree}.D_{} is nonzero", degree + 1)]
    CompositionNonzero { degree: i32 },

    #[error("cell budget exceeded: {required} cells required, budget is {budget}")]
    CellBudgetExceeded { required: u64, budget: u64 },

    #[error("m = {m} is too large for subset enumeration (max {max})")]
    MTooLargeForEnumeration { m: u32, max: u32 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
