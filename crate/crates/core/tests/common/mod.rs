//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use identent::linalg::{hermitian_eig, inner, norm, ComplexMatrix};
use identent::states::{antisymmetrize_product, symmetrize_product};
use identent::{Statistics, TwoParticleState, Verdict, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut StdRng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng))
}

pub fn random_unit_vector(rng: &mut StdRng, n: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
    let k = 1.0 / norm(&v);
    v.iter().map(|z| z * k).collect()
}

/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = inner(c, &v);
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= p * y;
                }
            }
        }
        let k = norm(&v);
        if k > 1e-6 {
            cols.push(v.iter().map(|z| z / k).collect());
        }
    }
    ComplexMatrix::from_columns(&cols).unwrap()
}

pub fn normalized(m: &ComplexMatrix) -> ComplexMatrix {
    m.scale_real(1.0 / m.frobenius_norm())
}

pub fn random_symmetric(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let x = random_matrix(rng, n);
    normalized(&(&x + &x.transpose()))
}

pub fn random_antisymmetric(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let x = random_matrix(rng, n);
    normalized(&(&x - &x.transpose()))
}

/// `W·diag(σ)·Wᵀ` for a random unitary `W`.
pub fn symmetric_with_values(rng: &mut StdRng, sigma: &[f64]) -> ComplexMatrix {
    let w = random_unitary(rng, sigma.len());
    &(&w * &ComplexMatrix::from_diag(sigma)) * &w.transpose()
}

/// `W·Z·Wᵀ` with blocks `z` (zero-padded to `n`).
pub fn antisymmetric_with_values(rng: &mut StdRng, z: &[f64], n: usize) -> ComplexMatrix {
    assert!(2 * z.len() <= n);
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, &zi) in z.iter().enumerate() {
        m[(2 * i, 2 * i + 1)] = C64::new(zi, 0.0);
        m[(2 * i + 1, 2 * i)] = C64::new(-zi, 0.0);
    }
    let w = random_unitary(rng, n);
    &(&w * &m) * &w.transpose()
}

/// Random nonnegative weights summing to one.
pub fn random_simplex(rng: &mut StdRng, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|x| x / s).collect()
}

/// Square roots of the eigenvalues of `MM†`, descending (clamped at zero).
pub fn singular_values_via_gram(m: &ComplexMatrix) -> Vec<f64> {
    let g = (m * &m.adjoint()).hermitian_part();
    hermitian_eig(&g, 1e-12)
        .unwrap()
        .eigenvalues
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

/// Entanglement verdict computed only from the spectrum of `CC†`, without
/// Takagi or Youla factorizations.
///
/// Singular values below `1e-6` of the largest count as zero; rank-deficient
/// test states sit at ~1e-8 or below in this representation, generic ones
/// well above it.
pub fn oracle_verdict(state: &TwoParticleState, classify_tol: f64) -> (Verdict, usize) {
    let sv = singular_values_via_gram(state.coeffs());
    let cut = 1e-6 * sv[0];
    let rank = sv.iter().filter(|&&s| s > cut).count();
    match state.statistics() {
        Statistics::Fermion => {
            let slater = rank / 2;
            let v = if slater == 1 {
                Verdict::NonEntangled
            } else {
                Verdict::Entangled
            };
            (v, slater)
        }
        Statistics::Boson => {
            let v = match rank {
                1 => Verdict::NonEntangled,
                2 if (sv[0] - sv[1]).abs() <= classify_tol => Verdict::NonEntangled,
                _ => Verdict::Entangled,
            };
            (v, rank)
        }
    }
}

/// A mix of fermion states: generic random, random Slater-one, random
/// Slater-k for k below full rank.
pub fn random_fermion_state(rng: &mut StdRng, n: usize) -> TwoParticleState {
    match rng.gen_range(0..3) {
        0 => TwoParticleState::new(random_antisymmetric(rng, n), Statistics::Fermion).unwrap(),
        1 => {
            let phi = random_unit_vector(rng, n);
            let mut chi = random_unit_vector(rng, n);
            while norm(&sub(&chi, &scale(&phi, inner(&phi, &chi)))) < 1e-3 {
                chi = random_unit_vector(rng, n);
            }
            antisymmetrize_product(&phi, &chi).unwrap()
        }
        _ => {
            let k = rng.gen_range(1..=n / 2);
            let z = random_simplex(rng, k);
            let z: Vec<f64> = z.iter().map(|w| (w / 2.0).sqrt()).collect();
            let m = antisymmetric_with_values(rng, &z, n);
            TwoParticleState::new(normalized(&m), Statistics::Fermion).unwrap()
        }
    }
}

/// A mix of boson states: generic, product, orthogonal pair, non-orthogonal pair,
/// random low rank.
pub fn random_boson_state(rng: &mut StdRng, n: usize) -> TwoParticleState {
    match rng.gen_range(0..5) {
        0 => TwoParticleState::new(random_symmetric(rng, n), Statistics::Boson).unwrap(),
        1 => {
            let phi = random_unit_vector(rng, n);
            symmetrize_product(&phi, &phi).unwrap()
        }
        2 => {
            let w = random_unitary(rng, n);
            symmetrize_product(&w.column(0), &w.column(1)).unwrap()
        }
        3 => {
            let w = random_unitary(rng, n);
            let s: f64 = rng.gen_range(0.05..0.95);
            let ph = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let chi: Vec<C64> = w
                .column(0)
                .iter()
                .zip(w.column(1))
                .map(|(a, b)| a * s * ph + b * (1.0 - s * s).sqrt())
                .collect();
            symmetrize_product(&w.column(0), &chi).unwrap()
        }
        _ => {
            let k = rng.gen_range(1..=n);
            let mut sigma = vec![0.0; n];
            for (i, w) in random_simplex(rng, k).into_iter().enumerate() {
                sigma[i] = w.sqrt();
            }
            TwoParticleState::new(
                normalized(&symmetric_with_values(rng, &sigma)),
                Statistics::Boson,
            )
            .unwrap()
        }
    }
}

pub fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|x| x * s).collect()
}
