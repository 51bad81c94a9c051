use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),

    #[error("invalid quadrature configuration: {0}")]
    Config(&'static str),

    /// The panel budget cannot deliver the requested absolute tolerance.
    #[error(
        "tolerance unreachable: p = {p}, abs_tol = {abs_tol:e} needs {needed} panels \
         (budget {max_panels})"
    )]
    ToleranceUnreachable {
        p: f64,
        abs_tol: f64,
        needed: u64,
        max_panels: u64,
    },

    /// The quadrature ran within budget but its error estimate exceeds the tolerance.
    #[error("tolerance unreachable: p = {p}, achieved error bound {achieved:e} > abs_tol {abs_tol:e}")]
    NotConverged { p: f64, abs_tol: f64, achieved: f64 },

    #[error("bracket failure: f({lo}) = {f_lo:e} and f({hi}) = {f_hi:e} do not change sign")]
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ToleranceUnreachable { .. } | Error::NotConverged { .. } | Error::BracketFailure { .. }
        )
    }
}
