//! Default numerical thresholds.

/// Residual bound for certified factorizations.
pub const FACT_TOL: f64 = 1e-10;
/// A canonical value is zero when it is at most this fraction of the largest one.
pub const RANK_TOL: f64 = 1e-9;
/// Coefficient comparison tolerance used by the boson `b₁ = b₂` test.
pub const CLASSIFY_TOL: f64 = 1e-8;
/// Eigenvalues of `MM†` closer than this fraction of the largest are one cluster.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Exchange-symmetry and normalization tolerance for stored states.
pub const STATE_TOL: f64 = 1e-10;
/// Coefficient matrices within this distance of unit norm are renormalized.
pub const RENORM_WINDOW: f64 = 1e-6;
/// Unit-norm tolerance for single-particle input vectors.
pub const VECTOR_NORM_TOL: f64 = 1e-9;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this fraction of `‖H‖_F`.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// The tolerance bundle threaded through factorization and classification.
///
/// [`Tolerances::scaled`] moves all three together so the ratios between
/// them stay fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub fact: f64,
    pub rank: f64,
    pub classify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fact: FACT_TOL,
            rank: RANK_TOL,
            classify: CLASSIFY_TOL,
        }
    }
}

impl Tolerances {
    /// Bundle whose classification tolerance is `classify_tol`, with the
    /// factorization and rank tolerances scaled by the same factor.
    pub fn scaled(classify_tol: f64) -> Self {
        let k = classify_tol / CLASSIFY_TOL;
        Tolerances {
            fact: FACT_TOL * k,
            rank: RANK_TOL * k,
            classify: classify_tol,
        }
    }
}
