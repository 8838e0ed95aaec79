//! Two-identical-particle pure states, their reduced density operators,
//! entropies, and Slater/Schmidt decompositions.
//!
//! A state is stored as its coefficient matrix `C` in a fixed single-particle
//! basis, `|ψ⟩ = Σ c_ij |i⟩₁|j⟩₂`. Exchange symmetry makes `C` antisymmetric
//! for fermions and symmetric for bosons, and the one-particle reduced density
//! operator is `ρ = CC†` for either particle.

use std::f64::consts::SQRT_2;
use std::fmt;

use crate::decompositions::{count_nonzero, takagi, youla};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inner, norm, ComplexMatrix};
use crate::tolerance::{Tolerances, RENORM_WINDOW, STATE_TOL, VECTOR_NORM_TOL};
use crate::C64;

/// Eigenvalues of a density operator may dip this far below zero from rounding.
const NEGATIVE_EIG_TOL: f64 = 1e-10;
/// Below this Frobenius norm `φχᵀ − χφᵀ` is treated as zero.
const PARALLEL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    /// `-1` for fermions, `+1` for bosons.
    pub fn exchange_sign(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermion" => Ok(Statistics::Fermion),
            "boson" => Ok(Statistics::Boson),
            other => Err(Error::Validation(format!(
                "unknown statistics {other:?} (expected \"fermion\" or \"boson\")"
            ))),
        }
    }
}

/// Normalized two-particle state with definite exchange symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState {
    statistics: Statistics,
    coeffs: ComplexMatrix,
}

impl TwoParticleState {
    /// Validates a coefficient matrix as a state of the given statistics.
    ///
    /// A norm within [`RENORM_WINDOW`] of one is renormalized and a symmetry
    /// defect `‖C ∓ Cᵀ‖_F ≤ tol` is removed by projection; anything further
    /// off is rejected.
    pub fn from_coefficients(
        matrix: ComplexMatrix,
        statistics: Statistics,
        tol: f64,
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.frobenius_norm();
        if !((n - 1.0).abs() <= RENORM_WINDOW) {
            return Err(Error::Validation(format!(
                "state norm {n} differs from 1 by more than {RENORM_WINDOW:e}"
            )));
        }
        let sign = statistics.exchange_sign();
        let t = matrix.transpose();
        let defect = (&matrix - &t.scale_real(sign)).frobenius_norm();
        if defect > tol {
            return Err(Error::Validation(format!(
                "coefficient matrix is not {} (defect {defect:e} > {tol:e})",
                match statistics {
                    Statistics::Fermion => "antisymmetric",
                    Statistics::Boson => "symmetric",
                }
            )));
        }
        let projected = (&matrix + &t.scale_real(sign)).scale_real(0.5);
        let pn = projected.frobenius_norm();
        Ok(TwoParticleState {
            statistics,
            coeffs: projected.scale_real(1.0 / pn),
        })
    }

    /// [`from_coefficients`](Self::from_coefficients) with the default symmetry tolerance.
    pub fn new(matrix: ComplexMatrix, statistics: Statistics) -> Result<Self> {
        Self::from_coefficients(matrix, statistics, STATE_TOL)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    /// `⟨self|other⟩ = Σ conj(c_ij)·d_ij`.
    pub fn overlap(&self, other: &TwoParticleState) -> C64 {
        self.coeffs
            .as_slice()
            .iter()
            .zip(other.coeffs.as_slice())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// True when the two states agree up to a global phase.
    pub fn same_ray(&self, other: &TwoParticleState, tol: f64) -> bool {
        self.dim() == other.dim() && (self.overlap(other).norm() - 1.0).abs() <= tol
    }
}

/// Unit vector `e_k` of `C^dim`.
pub fn basis_vector(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

fn check_pair(phi: &[C64], chi: &[C64]) -> Result<()> {
    if phi.len() != chi.len() {
        return Err(Error::DimensionMismatch(format!(
            "single-particle vectors have lengths {} and {}",
            phi.len(),
            chi.len()
        )));
    }
    if phi.is_empty() {
        return Err(Error::Validation(
            "single-particle vectors are empty".into(),
        ));
    }
    for (name, v) in [("phi", phi), ("chi", chi)] {
        let n = norm(v);
        if !((n - 1.0).abs() <= VECTOR_NORM_TOL) {
            return Err(Error::Validation(format!(
                "{name} has norm {n}, expected 1"
            )));
        }
    }
    Ok(())
}

/// Fermion state obtained by antisymmetrizing `φ ⊗ χ`.
pub fn antisymmetrize_product(phi: &[C64], chi: &[C64]) -> Result<TwoParticleState> {
    check_pair(phi, chi)?;
    let m = &ComplexMatrix::outer(phi, chi) - &ComplexMatrix::outer(chi, phi);
    let n = m.frobenius_norm();
    if n <= PARALLEL_TOL {
        return Err(Error::DegenerateInput(
            "phi and chi are parallel; two fermions cannot occupy the same state".into(),
        ));
    }
    Ok(TwoParticleState {
        statistics: Statistics::Fermion,
        coeffs: m.scale_real(1.0 / n),
    })
}

/// Boson state obtained by symmetrizing `φ ⊗ χ`; for `φ = χ` this is `φ ⊗ φ`.
pub fn symmetrize_product(phi: &[C64], chi: &[C64]) -> Result<TwoParticleState> {
    check_pair(phi, chi)?;
    let m = &ComplexMatrix::outer(phi, chi) + &ComplexMatrix::outer(chi, phi);
    // ‖φχᵀ + χφᵀ‖² = 2(1 + |⟨χ|φ⟩|²) > 0 for unit vectors
    let n = m.frobenius_norm();
    Ok(TwoParticleState {
        statistics: Statistics::Boson,
        coeffs: m.scale_real(1.0 / n),
    })
}

/// One-particle reduced density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Checks Hermiticity and unit trace; positivity is checked when the
    /// spectrum is computed.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(
                "density operator must be square".into(),
            ));
        }
        let h = matrix.hermiticity_defect();
        if h > STATE_TOL {
            return Err(Error::Validation(format!(
                "density operator is not Hermitian (defect {h:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::Validation(format!(
                "density operator has trace {tr}"
            )));
        }
        Ok(DensityOperator { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order, tiny negative values clamped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let eig = hermitian_eig(&self.matrix, 1e-9)?;
        eig.eigenvalues
            .into_iter()
            .map(|l| {
                if l < -NEGATIVE_EIG_TOL {
                    Err(Error::Validation(format!(
                        "density operator has eigenvalue {l:e} < 0"
                    )))
                } else {
                    Ok(l.max(0.0))
                }
            })
            .collect()
    }
}

/// `ρ = CC†`, equal to the partial trace over either particle.
pub fn reduced_density(state: &TwoParticleState) -> DensityOperator {
    let c = state.coeffs();
    DensityOperator {
        matrix: (c * &c.adjoint()).hermitian_part(),
    }
}

/// `−Σ pᵢ log₂ pᵢ` with `0·log 0 = 0`.
pub fn shannon_entropy_bits(weights: &[f64]) -> f64 {
    -weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(shannon_entropy_bits(&rho.spectrum()?).max(0.0))
}

/// Canonical decomposition of a two-particle state.
///
/// For fermions `coefficients` holds the Slater moduli `|aᵢ| = √2·zᵢ` (one
/// per Youla block) and `basis` pairs columns `(2i, 2i+1)`; for bosons it
/// holds the Schmidt coefficients `bᵢ` with `basis` the Takagi unitary.
#[derive(Debug, Clone)]
pub struct SchmidtData {
    pub statistics: Statistics,
    pub coefficients: Vec<f64>,
    pub basis: ComplexMatrix,
    /// Slater number (fermions) or Schmidt number (bosons).
    pub count: usize,
    /// Reconstruction residual of the underlying factorization.
    pub residual: f64,
    pub unitarity_defect: f64,
}

impl SchmidtData {
    /// Coefficient matrix rebuilt from the decomposition.
    pub fn rebuild(&self) -> ComplexMatrix {
        let n = self.basis.rows();
        let mut c = ComplexMatrix::zeros(n, n);
        match self.statistics {
            Statistics::Fermion => {
                for (i, &a) in self.coefficients.iter().enumerate() {
                    let u = self.basis.column(2 * i);
                    let v = self.basis.column(2 * i + 1);
                    let term = &ComplexMatrix::outer(&u, &v) - &ComplexMatrix::outer(&v, &u);
                    c = &c + &term.scale_real(a / SQRT_2);
                }
            }
            Statistics::Boson => {
                for (i, &b) in self.coefficients.iter().enumerate() {
                    let u = self.basis.column(i);
                    c = &c + &ComplexMatrix::outer(&u, &u).scale_real(b);
                }
            }
        }
        c
    }

    /// Weights `|aᵢ|²` or `bᵢ²`.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|x| x * x).collect()
    }
}

pub fn schmidt_data(state: &TwoParticleState) -> Result<SchmidtData> {
    schmidt_data_with(state, &Tolerances::default())
}

pub fn schmidt_data_with(state: &TwoParticleState, tol: &Tolerances) -> Result<SchmidtData> {
    match state.statistics() {
        Statistics::Fermion => {
            let y = youla(state.coeffs(), tol.fact)?;
            Ok(SchmidtData {
                statistics: Statistics::Fermion,
                count: count_nonzero(&y.z, tol.rank),
                coefficients: y.z.iter().map(|z| SQRT_2 * z).collect(),
                basis: y.u,
                residual: y.residual,
                unitarity_defect: y.unitarity_defect,
            })
        }
        Statistics::Boson => {
            let t = takagi(state.coeffs(), tol.fact)?;
            Ok(SchmidtData {
                statistics: Statistics::Boson,
                count: count_nonzero(&t.sigma, tol.rank),
                coefficients: t.sigma,
                basis: t.u,
                residual: t.residual,
                unitarity_defect: t.unitarity_defect,
            })
        }
    }
}

/// Closed-form Schmidt coefficients `(b₁, b₂)` of the boson state obtained by
/// symmetrizing two unit vectors whose overlap has modulus `s`.
///
/// With `|b|² = (1 − s²)/(1 + s²)`, `b₁,₂ = √((1 ± √(1 − |b|⁴))/2)`.
pub fn predicted_schmidt_coefficients(overlap_modulus: f64) -> Result<(f64, f64)> {
    let s = overlap_modulus;
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Validation(format!(
            "overlap modulus {s} is outside [0, 1)"
        )));
    }
    let s2 = s * s;
    let b2 = (1.0 - s2) / (1.0 + s2);
    let root = (1.0 - b2 * b2).max(0.0).sqrt();
    Ok((((1.0 + root) / 2.0).sqrt(), ((1.0 - root) / 2.0).sqrt()))
}

/// `|⟨χ|φ⟩|`.
pub fn overlap_modulus(phi: &[C64], chi: &[C64]) -> f64 {
    inner(chi, phi).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn eq33() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![r(0.0), r(FRAC_1_SQRT_2)],
            vec![r(-FRAC_1_SQRT_2), r(0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn from_coefficients_accepts_valid_states() {
        let s = TwoParticleState::new(eq33(), Statistics::Fermion).unwrap();
        assert_eq!(s.coeffs(), &eq33());
        let sym = ComplexMatrix::from_diag(&[0.8, 0.6]);
        let b = TwoParticleState::new(sym.clone(), Statistics::Boson).unwrap();
        assert_eq!(b.coeffs(), &sym);
    }

    #[test]
    fn from_coefficients_rejects_wrong_symmetry() {
        assert!(matches!(
            TwoParticleState::new(eq33(), Statistics::Boson),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn from_coefficients_renormalizes_inside_window_only() {
        let slightly = ComplexMatrix::from_diag(&[0.8, 0.6]).scale_real(1.0 + 5e-7);
        let s = TwoParticleState::new(slightly, Statistics::Boson).unwrap();
        assert!((s.coeffs().frobenius_norm() - 1.0).abs() < 1e-15);
        let far = ComplexMatrix::from_diag(&[0.8, 0.6]).scale_real(1.01);
        assert!(TwoParticleState::new(far, Statistics::Boson).is_err());
        assert!(TwoParticleState::new(ComplexMatrix::zeros(2, 2), Statistics::Boson).is_err());
    }

    #[test]
    fn from_coefficients_projects_small_defects() {
        let mut m = eq33();
        m[(0, 1)] += r(1e-12);
        let s = TwoParticleState::new(m, Statistics::Fermion).unwrap();
        assert!(s.coeffs().antisymmetry_defect() < 1e-16);
    }

    #[test]
    fn antisymmetrize_examples() {
        let e1 = basis_vector(2, 0);
        let e2 = basis_vector(2, 1);
        let s = antisymmetrize_product(&e1, &e2).unwrap();
        assert!(s.coeffs().distance(&eq33()) < 1e-15);
        assert!(matches!(
            antisymmetrize_product(&e1, &e1),
            Err(Error::DegenerateInput(_))
        ));
        let mix = vec![r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)];
        let t = antisymmetrize_product(&e1, &mix).unwrap();
        assert!(t.same_ray(&s, 1e-14));
    }

    #[test]
    fn antisymmetrize_rejects_unnormalized() {
        let e1 = basis_vector(2, 0);
        assert!(antisymmetrize_product(&e1, &[r(2.0), r(0.0)]).is_err());
        assert!(matches!(
            antisymmetrize_product(&e1, &basis_vector(3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn symmetrize_examples() {
        let e1 = basis_vector(2, 0);
        let e2 = basis_vector(2, 1);
        let p = symmetrize_product(&e1, &e1).unwrap();
        assert_eq!(p.coeffs(), &ComplexMatrix::outer(&e1, &e1));

        let o = symmetrize_product(&e1, &e2).unwrap();
        let expect = ComplexMatrix::from_rows(&[
            vec![r(0.0), r(FRAC_1_SQRT_2)],
            vec![r(FRAC_1_SQRT_2), r(0.0)],
        ])
        .unwrap();
        assert!(o.coeffs().distance(&expect) < 1e-15);

        let chi = vec![r(0.6), r(0.8)];
        let n = symmetrize_product(&e1, &chi).unwrap();
        let k = 1.0 / (2.0f64 * 1.36).sqrt();
        let expect =
            ComplexMatrix::from_rows(&[vec![r(1.2 * k), r(0.8 * k)], vec![r(0.8 * k), r(0.0)]])
                .unwrap();
        assert!(n.coeffs().distance(&expect) < 1e-15);
    }

    #[test]
    fn reduced_density_examples() {
        let s = TwoParticleState::new(eq33(), Statistics::Fermion).unwrap();
        let rho = reduced_density(&s);
        assert!(
            rho.matrix()
                .distance(&ComplexMatrix::from_diag(&[0.5, 0.5]))
                < 1e-15
        );

        let e1 = basis_vector(3, 0);
        let p = symmetrize_product(&e1, &e1).unwrap();
        assert_eq!(
            reduced_density(&p).matrix(),
            &ComplexMatrix::from_diag(&[1.0, 0.0, 0.0])
        );

        let b = ComplexMatrix::from_diag(&[0.75f64.sqrt(), 0.25f64.sqrt()]);
        let s = TwoParticleState::new(b, Statistics::Boson).unwrap();
        assert!(
            reduced_density(&s)
                .matrix()
                .distance(&ComplexMatrix::from_diag(&[0.75, 0.25]))
                < 1e-15
        );
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityOperator::new(ComplexMatrix::from_diag(&[1.0, 0.0])).unwrap();
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let half = DensityOperator::new(ComplexMatrix::from_diag(&[0.5, 0.5])).unwrap();
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-15);
        let q = DensityOperator::new(ComplexMatrix::from_diag(&[0.75, 0.25])).unwrap();
        // -0.75·log2(0.75) - 0.25·log2(0.25)
        assert!((von_neumann_entropy(&q).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-14);
    }

    #[test]
    fn entropy_rejects_negative_eigenvalue() {
        let bad = DensityOperator::new(ComplexMatrix::from_diag(&[1.1, -0.1])).unwrap();
        assert!(matches!(
            von_neumann_entropy(&bad),
            Err(Error::Validation(_))
        ));
        let tiny = DensityOperator::new(ComplexMatrix::from_diag(&[1.0 + 1e-11, -1e-11])).unwrap();
        assert!(von_neumann_entropy(&tiny).unwrap() < 1e-9);
    }

    #[test]
    fn density_operator_validation() {
        assert!(DensityOperator::new(ComplexMatrix::from_diag(&[0.5, 0.4])).is_err());
        let mut nh = ComplexMatrix::from_diag(&[0.5, 0.5]);
        nh[(0, 1)] = r(0.1);
        assert!(DensityOperator::new(nh).is_err());
    }

    #[test]
    fn schmidt_examples() {
        let s = TwoParticleState::new(eq33(), Statistics::Fermion).unwrap();
        let d = schmidt_data(&s).unwrap();
        assert_eq!(d.count, 1);
        assert!((d.coefficients[0] - 1.0).abs() < 1e-15);

        let b = ComplexMatrix::from_diag(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let s = TwoParticleState::new(b, Statistics::Boson).unwrap();
        let d = schmidt_data(&s).unwrap();
        assert_eq!(d.count, 2);
        assert!((d.coefficients[0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((d.coefficients[1] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn slater_two_entropy_is_two() {
        // a = (1/√2, 1/√2) on basis pairs (e1,e2), (e3,e4): c_12 = a₁/√2 = 1/2
        let mut c = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 1), (2, 3)] {
            c[(i, j)] = r(0.5);
            c[(j, i)] = r(-0.5);
        }
        let s = TwoParticleState::new(c, Statistics::Fermion).unwrap();
        let d = schmidt_data(&s).unwrap();
        assert_eq!(d.count, 2);
        let e = von_neumann_entropy(&reduced_density(&s)).unwrap();
        assert!((e - 2.0).abs() < 1e-9);
    }

    #[test]
    fn predicted_coefficients() {
        let (b1, b2) = predicted_schmidt_coefficients(0.0).unwrap();
        assert!((b1 - FRAC_1_SQRT_2).abs() < 1e-15 && (b2 - FRAC_1_SQRT_2).abs() < 1e-15);
        let (b1, b2) = predicted_schmidt_coefficients(1.0 - 1e-9).unwrap();
        assert!(b1 > 0.999_999 && b2 < 1e-3);
        assert!(predicted_schmidt_coefficients(1.0).is_err());
        assert!(predicted_schmidt_coefficients(-0.1).is_err());

        let e1 = basis_vector(2, 0);
        let chi = vec![r(0.6), r(0.8)];
        let s = symmetrize_product(&e1, &chi).unwrap();
        let d = schmidt_data(&s).unwrap();
        let (b1, b2) = predicted_schmidt_coefficients(overlap_modulus(&e1, &chi)).unwrap();
        assert!((d.coefficients[0] - b1).abs() < 1e-10);
        assert!((d.coefficients[1] - b2).abs() < 1e-10);
    }

    #[test]
    fn statistics_parse() {
        assert_eq!(
            "fermion".parse::<Statistics>().unwrap(),
            Statistics::Fermion
        );
        assert_eq!("boson".parse::<Statistics>().unwrap(), Statistics::Boson);
        assert!("anyon".parse::<Statistics>().is_err());
    }
}
