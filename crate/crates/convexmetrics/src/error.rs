use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its mathematical domain.
    #[error("parameter `{name}` = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A distribution could not be constructed from the given parameters.
    #[error("cannot construct distribution: {0}")]
    Construction(String),

    /// A precondition on the input measure is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Problem size exceeds a configured resource cap.
    #[error("problem size {size} exceeds cap {cap}; {hint}")]
    Resource {
        size: usize,
        cap: usize,
        hint: &'static str,
    },

    /// An internal solver failed to produce a certified answer.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Configuration file problems.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
