use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("K = {k}, N = {n}: KN = {} exceeds the supported limit of {limit}", u64::from(*k) * u64::from(*n))]
    ResourceLimit { k: u32, n: u32, limit: u32 },
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },
    #[error("malformed coefficient table: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
