//! Seeded inputs for the benchmarks.

use identent::linalg::ComplexMatrix;
use identent::{Statistics, TwoParticleState, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    ComplexMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn unit(m: ComplexMatrix) -> ComplexMatrix {
    let k = 1.0 / m.frobenius_norm();
    m.scale_real(k)
}

pub fn hermitian(n: usize, seed: u64) -> ComplexMatrix {
    random_matrix(n, seed).hermitian_part()
}

pub fn symmetric(n: usize, seed: u64) -> ComplexMatrix {
    let x = random_matrix(n, seed);
    unit(&x + &x.transpose())
}

pub fn antisymmetric(n: usize, seed: u64) -> ComplexMatrix {
    let x = random_matrix(n, seed);
    unit(&x - &x.transpose())
}

pub fn state(n: usize, statistics: Statistics, seed: u64) -> TwoParticleState {
    let c = match statistics {
        Statistics::Fermion => antisymmetric(n, seed),
        Statistics::Boson => symmetric(n, seed),
    };
    TwoParticleState::new(c, statistics).expect("normalized by construction")
}
