use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { op: &'static str, detail: String },
    /// A documented precondition does not hold.
    Precondition { op: &'static str, detail: String },
    /// An assembled matrix is not Hermitian within tolerance.
    NonHermitian { residual: f64, fingerprint: u64 },
    /// The eigensolver did not converge.
    Convergence { fingerprint: u64, dim: usize },
    /// The requested quantity diverges for these inputs.
    Unbounded { op: &'static str, detail: String },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition { op, detail: detail.into() }
    }

    pub(crate) fn unbounded(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Unbounded { op, detail: detail.into() }
    }

    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonHermitian { .. } | Error::Convergence { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, detail } => write!(f, "{op}: domain error: {detail}"),
            Error::Precondition { op, detail } => write!(f, "{op}: precondition violated: {detail}"),
            Error::NonHermitian { residual, fingerprint } => write!(
                f,
                "matrix not Hermitian (relative residual {residual:.3e}, fingerprint {fingerprint:016x})"
            ),
            Error::Convergence { fingerprint, dim } => write!(
                f,
                "eigensolver failed to converge (dim {dim}, fingerprint {fingerprint:016x})"
            ),
            Error::Unbounded { op, detail } => write!(f, "{op}: unbounded result: {detail}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
