//! Exact 3-adic and high-precision analytic machinery for verifying
//! congruences between critical L-values of an elliptic curve twisted by
//! the degree-two Artin representations of the first layer of a false Tate
//! extension.
//!
//! The crate is organised around two independent evaluation routes:
//!
//! * an exact route through q-expansion algebra, modular symbols and a
//!   3-adic Rankin-Selberg measure (`series`, `modsym`, `measures`), and
//! * a floating-point route through approximate functional equations,
//!   Fricke pseudo-eigenvalues and period integrals (`lfun`, `ellcurve`,
//!   `modsym::periods`),
//!
//! which are reconciled against each other by the verification driver.
//!
//! Inner loops (coefficient generation, kernel sums, Hecke sweeps) are
//! data-parallel; with the default `parallel` feature they run on rayon,
//! without it the same code runs sequentially.

pub mod par;
pub mod rings;
pub mod series;
pub mod ellcurve;
pub mod artin;
pub mod lfun;
pub mod modsym;
pub mod measures;

pub use rings::{BigComplex, BigFloat, BigRational, CycloElem, Padic3, RamifiedPadic3};
pub use series::QExpansion;
