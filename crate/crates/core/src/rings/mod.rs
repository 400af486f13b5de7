//! Exact and approximate scalar arithmetic: big rationals, cyclotomic
//! elements of 2^a 3^b order, capped-precision 3-adic numbers and their
//! ramified quadratic extension, high-precision complex floats, and
//! recognition of exact values from floats.

pub mod bernoulli;
pub mod complex;
pub mod cyclo;
pub mod float;
pub mod padic;
pub mod ramified;
pub mod recognize;
pub mod special;

pub use complex::BigComplex;
pub use cyclo::CycloElem;
pub use float::{digits_to_bits, BigFloat};
pub use padic::{hensel_unit_root, Padic3};
pub use ramified::{embed_3adic, RamifiedPadic3};
pub use recognize::{rational_reconstruct, recognize_quadomega, recognize_rational};

/// Exact rationals (numerator/denominator in lowest terms, positive
/// denominator — maintained by `num_rational`).
pub type BigRational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("a_p divisible by 3: the form is not ordinary at 3")]
    NotOrdinary,
    #[error("no rational/quadratic value within the denominator bound and tolerance")]
    NoRecognition,
    #[error("element does not lie in Q(sqrt(-3))")]
    NotInQuadraticField,
    #[error("division by an apparent 3-adic zero")]
    DivisionByApparentZero,
    #[error("3-adic precision exhausted")]
    PrecisionExhausted,
    #[error("value is not 3-adically integral")]
    NotIntegral,
}
