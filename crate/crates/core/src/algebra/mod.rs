//! Exact half-integers and Laurent polynomials in `t^{1/2}`.

mod halfint;
mod laurent;

pub use halfint::{HalfInt, ParseHalfIntError};
pub use laurent::{LaurentPoly, Unit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("polynomial {0} has no symmetric normal form")]
    NotSymmetrizable(String),
    #[error("the zero polynomial has no leading coefficient")]
    ZeroPolynomial,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}
