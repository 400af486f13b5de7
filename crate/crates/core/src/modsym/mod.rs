//! Modular symbols for Gamma_0(N): Manin presentation, Hecke matrices,
//! 3-adic eigen-blocks, congruence numbers, the intersection pairing and
//! numeric period integrals.

pub mod block;
pub mod intersect;
pub mod linalg;
pub mod p1;
pub mod periods;
pub mod space;
pub mod zmod3;

pub use space::ModularSymbolSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModSymError {
    #[error("3-adic precision exhausted while separating eigen-systems")]
    PrecisionExhausted,
    #[error("eigen-systems in the block could not be separated")]
    InseparableBlock,
    #[error("period integral converged too slowly")]
    SlowConvergence,
    #[error("intersection pairing needs a torsion-free level (mu_2 = mu_3 = 0)")]
    EllipticPoints,
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}
