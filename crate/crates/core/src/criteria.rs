//! Entanglement classification of two-identical-particle states and the
//! property-attribution operator `E_P = P⊗(I−P) + (I−P)⊗P + P⊗P`.
//!
//! Fermions are non-entangled exactly when the Slater number is one. Bosons
//! are non-entangled when the Schmidt number is one (both particles in the
//! same state) or when it is two with equal coefficients (symmetrized pair of
//! orthogonal states). At Schmidt number two the equal-coefficient test is
//! done on `|b₁ − b₂|`, not on the entropy, since `S(b)` is flat at `b₁ = b₂`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{conj_vec, inner, norm, ComplexMatrix};
use crate::states::{
    antisymmetrize_product, reduced_density, schmidt_data_with, symmetrize_product,
    von_neumann_entropy, SchmidtData, Statistics, TwoParticleState,
};
use crate::tolerance::{Tolerances, VECTOR_NORM_TOL};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonEntangled,
    Entangled,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonEntangled => "non-entangled",
            Verdict::Entangled => "entangled",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcase {
    FermionSlaterOne,
    FermionSlaterMany,
    BosonProduct,
    BosonOrthogonalPair,
    BosonNonOrthogonalPair,
    BosonRankThreePlus,
}

impl Subcase {
    pub fn verdict(self) -> Verdict {
        match self {
            Subcase::FermionSlaterOne | Subcase::BosonProduct | Subcase::BosonOrthogonalPair => {
                Verdict::NonEntangled
            }
            Subcase::FermionSlaterMany
            | Subcase::BosonNonOrthogonalPair
            | Subcase::BosonRankThreePlus => Verdict::Entangled,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Subcase::FermionSlaterOne => "fermion-slater-one",
            Subcase::FermionSlaterMany => "fermion-slater-many",
            Subcase::BosonProduct => "boson-product",
            Subcase::BosonOrthogonalPair => "boson-orthogonal-pair",
            Subcase::BosonNonOrthogonalPair => "boson-non-orthogonal-pair",
            Subcase::BosonRankThreePlus => "boson-rank-three-plus",
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pair of single-particle states whose (anti)symmetrized product is the
/// classified state.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub phi: Vec<C64>,
    pub chi: Vec<C64>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub subcase: Subcase,
    pub slater_or_schmidt_number: usize,
    /// Von Neumann entropy (bits) of the one-particle reduced density operator.
    pub entropy: f64,
    /// Present exactly when the verdict is non-entangled.
    pub witness: Option<Witness>,
    /// The decomposition the verdict was read from.
    pub schmidt: SchmidtData,
}

impl Classification {
    /// Re-(anti)symmetrizes the witness, if any.
    pub fn witness_state(&self) -> Option<Result<TwoParticleState>> {
        let w = self.witness.as_ref()?;
        Some(match self.schmidt.statistics {
            Statistics::Fermion => antisymmetrize_product(&w.phi, &w.chi),
            Statistics::Boson => symmetrize_product(&w.phi, &w.chi),
        })
    }
}

/// Classifies with the default tolerance bundle scaled to `tol`.
pub fn classify(state: &TwoParticleState, tol: f64) -> Result<Classification> {
    classify_with(state, &Tolerances::scaled(tol))
}

pub fn classify_with(state: &TwoParticleState, tol: &Tolerances) -> Result<Classification> {
    let schmidt = schmidt_data_with(state, tol)?;
    let entropy = von_neumann_entropy(&reduced_density(state))?;
    let count = schmidt.count;
    let (subcase, witness) = match schmidt.statistics {
        Statistics::Fermion => {
            if count == 1 {
                let w = Witness {
                    phi: schmidt.basis.column(0),
                    chi: schmidt.basis.column(1),
                };
                (Subcase::FermionSlaterOne, Some(w))
            } else {
                (Subcase::FermionSlaterMany, None)
            }
        }
        Statistics::Boson => match count {
            1 => {
                let u = schmidt.basis.column(0);
                (
                    Subcase::BosonProduct,
                    Some(Witness {
                        phi: u.clone(),
                        chi: u,
                    }),
                )
            }
            2 => {
                let (b1, b2) = (schmidt.coefficients[0], schmidt.coefficients[1]);
                if (b1 - b2).abs() <= tol.classify {
                    (
                        Subcase::BosonOrthogonalPair,
                        Some(orthogonal_pair_witness(&schmidt)),
                    )
                } else {
                    (Subcase::BosonNonOrthogonalPair, None)
                }
            }
            _ => (Subcase::BosonRankThreePlus, None),
        },
    };
    if count == 0 {
        return Err(Error::Internal(
            "state has no nonzero canonical values".into(),
        ));
    }
    Ok(Classification {
        verdict: subcase.verdict(),
        subcase,
        slater_or_schmidt_number: count,
        entropy,
        witness,
        schmidt,
    })
}

/// `φ = (|1⟩ − i|2⟩)/√2`, `χ = (|1⟩ + i|2⟩)/√2` from the first two Takagi vectors.
fn orthogonal_pair_witness(schmidt: &SchmidtData) -> Witness {
    let u1 = schmidt.basis.column(0);
    let u2 = schmidt.basis.column(1);
    let i = C64::new(0.0, 1.0);
    let phi = u1
        .iter()
        .zip(&u2)
        .map(|(a, b)| (a - i * b) * FRAC_1_SQRT_2)
        .collect();
    let chi = u1
        .iter()
        .zip(&u2)
        .map(|(a, b)| (a + i * b) * FRAC_1_SQRT_2)
        .collect();
    Witness { phi, chi }
}

/// Expectation values of `E_P` and `P⊗P` for the projector onto `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub projector_state: Vec<C64>,
    /// `⟨E_P⟩`: probability of finding at least one particle in `p`.
    pub e_p_value: f64,
    /// `⟨P⊗P⟩`: probability of finding both particles in `p`.
    pub pp_value: f64,
}

impl PropertyReport {
    /// `⟨E_P⟩ − ⟨P⊗P⟩`: probability of finding exactly one particle in `p`.
    pub fn exactly_one_value(&self) -> f64 {
        self.e_p_value - self.pp_value
    }
}

/// Evaluates `⟨ψ|E_P|ψ⟩` and `⟨ψ|P⊗P|ψ⟩` for `P = |p⟩⟨p|`.
///
/// With `|ψ⟩ = Σ c_ij|i⟩|j⟩`: `⟨P⊗I⟩ = ‖C†p‖²`, `⟨I⊗P⟩ = ‖C·conj(p)‖²` and
/// `⟨P⊗P⟩ = |p†·C·conj(p)|²`.
pub fn expectation_e_p(state: &TwoParticleState, p: &[C64]) -> Result<PropertyReport> {
    if p.len() != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "projector vector has length {}, state dimension is {}",
            p.len(),
            state.dim()
        )));
    }
    let pn = norm(p);
    if !((pn - 1.0).abs() <= VECTOR_NORM_TOL) {
        return Err(Error::Validation(format!(
            "projector vector has norm {pn}, expected 1"
        )));
    }
    let c = state.coeffs();
    let first = norm(&c.adjoint().matvec(p)?).powi(2);
    let c_pbar = c.matvec(&conj_vec(p))?;
    let second = norm(&c_pbar).powi(2);
    let w = inner(p, &c_pbar);
    let pp = w.norm_sqr();
    Ok(PropertyReport {
        projector_state: p.to_vec(),
        e_p_value: (first + second - pp).clamp(0.0, 1.0),
        pp_value: pp.clamp(0.0, 1.0),
    })
}

/// The pair of single-particle states that can be attributed to the two
/// particles, or `None` for an entangled state.
///
/// Returns `None` as well if either witness fails `⟨E_P⟩ = 1` within
/// `tol.classify`.
pub fn attribute_properties(state: &TwoParticleState, tol: &Tolerances) -> Result<Option<Witness>> {
    let c = classify_with(state, tol)?;
    let Some(w) = c.witness else {
        return Ok(None);
    };
    for v in [&w.phi, &w.chi] {
        let r = expectation_e_p(state, v)?;
        if (r.e_p_value - 1.0).abs() > tol.classify {
            return Ok(None);
        }
    }
    Ok(Some(w))
}

/// Helper for building the projector of a witness vector.
pub fn projector(p: &[C64]) -> ComplexMatrix {
    ComplexMatrix::outer(p, &conj_vec(p))
}
