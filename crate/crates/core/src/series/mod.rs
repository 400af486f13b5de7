//! Truncated q-expansion algebra over the scalar rings: Hecke operators,
//! the V-operator, Euler-factor removal, ordinary 3-stabilization and
//! termwise congruence testing.

pub mod coeff;
pub mod dirichlet;
pub mod qexp;
pub mod quadorder;

pub use coeff::Coeff;
pub use dirichlet::{kronecker, DirichletCharacter};
pub use qexp::{p_stabilize, radical, QExpansion};
pub use quadorder::QuadraticOrderElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient ring cannot represent a required scalar")]
    ScalarUnrepresentable,
    #[error("form is not ordinary at 3")]
    NotOrdinary,
    #[error("level divisible by 3: already stabilized")]
    LevelDivisibleBy3,
    #[error("operation implemented for weight 2 only")]
    UnsupportedWeight,
    #[error("q-expansion dump parse error near line {0}")]
    DumpParse(usize),
    #[error("dump coefficient encoding does not match this ring")]
    RingMismatch,
}
