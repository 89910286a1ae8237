//! Exact symbolic computation engine for RTT-presented quantum algebras,
//! their orthogonal and symplectic reflection-equation coideals, and the
//! determinant identities these algebras satisfy.
//!
//! The crate is organized in layers:
//!
//! - [`scalar`]: exact rational-function arithmetic in `q` and truncated
//!   spectral series;
//! - [`tensor`]: sparse operators on `(C^N)^(x m)` and every constant and
//!   spectral R-matrix used downstream;
//! - [`ncalg`]: free-algebra words over leveled generators with a
//!   relation-driven rewriting engine producing normal forms;
//! - [`algebras`]: the concrete presentations, generator matrices, matrix
//!   inversion over truncated series, and the structure homomorphisms;
//! - [`minors`]: quantum and Sklyanin minors, determinants, comatrices and
//!   central series;
//! - [`verify`]: a registry of identity checks, each reducing the difference
//!   of the two sides of one identity to a normal form.

pub mod algebras;
pub mod minors;
pub mod ncalg;
pub mod scalar;
pub mod tensor;
pub mod verify;
