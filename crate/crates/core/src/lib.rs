//! Entanglement of two identical particles in a finite-dimensional
//! single-particle space.
//!
//! A two-particle pure state is carried by its coefficient matrix `C`,
//! `|ψ⟩ = Σ c_ij |i⟩₁|j⟩₂`, which is antisymmetric for fermions and
//! symmetric for bosons. The crate provides
//!
//! - [`linalg`]: dense complex matrices and a Jacobi Hermitian eigensolver,
//! - [`decompositions`]: Takagi (`B = UΣUᵀ`) and Youla (`A = UZUᵀ`) factorizations,
//! - [`states`]: state construction, reduced density operators, entropies and
//!   Slater/Schmidt data,
//! - [`criteria`]: the entanglement classification and the `E_P` property test,
//! - [`bell`]: the spin⊗position example states and CHSH machinery.
//!
//! ```
//! use identent::{classify, states, Verdict};
//!
//! let e1 = states::basis_vector(4, 0);
//! let e2 = states::basis_vector(4, 1);
//! let psi = states::antisymmetrize_product(&e1, &e2).unwrap();
//! let c = classify(&psi, 1e-8).unwrap();
//! assert_eq!(c.verdict, Verdict::NonEntangled);
//! assert!((c.entropy - 1.0).abs() < 1e-12);
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod criteria;
pub mod decompositions;
pub mod error;
pub mod linalg;
pub mod states;
pub mod tolerance;

pub use bell::{BellSetting, Direction, ExampleState, ScanGrid, ScanResult};
pub use criteria::{
    attribute_properties, classify, classify_with, expectation_e_p, Classification, PropertyReport,
    Subcase, Verdict,
};
pub use decompositions::{takagi, youla, TakagiResult, YoulaResult};
pub use error::{Error, Result};
pub use linalg::{hermitian_eig, ComplexMatrix, HermitianEig};
pub use states::{DensityOperator, SchmidtData, Statistics, TwoParticleState};
pub use tolerance::Tolerances;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
