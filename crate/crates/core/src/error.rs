use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("sampling produced a non-finite value {value} at node {node} (x = {x}, omega = {omega})")]
    Sampling { node: usize, x: f64, omega: f64, value: f64 },

    #[error("function is not integrable on the grid: {0}")]
    NotIntegrable(String),

    #[error("accuracy target not met: {what} (achieved estimate {estimate:e})")]
    Accuracy { what: String, estimate: f64 },

    #[error("invalid problem specification: {0}")]
    Spec(String),

    #[error("conjugate gradient did not converge in {iterations} iterations (relative residual {residual:e})")]
    Convergence { iterations: usize, residual: f64, history: Vec<f64> },

    #[error("oracle failure: {message} (condition estimate {condition:e})")]
    Oracle { message: String, condition: f64 },
}
