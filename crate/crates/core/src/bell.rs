//! Spin-½ ⊗ {Right, Left} example states and CHSH evaluation.
//!
//! The single-particle space is four-dimensional with basis order
//! `(↑R, ↓R, ↑L, ↓L)`, i.e. index `2·location + spin` with `R = 0, L = 1`
//! and `↑ = 0, ↓ = 1`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix};
use crate::states::{Statistics, TwoParticleState};
use crate::C64;

pub const BELL_DIM: usize = 4;

pub const fn index(location: usize, spin: usize) -> usize {
    2 * location + spin
}

const R: usize = 0;
const L: usize = 1;
const UP: usize = 0;
const DOWN: usize = 1;

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !((n2 - 1.0).abs() <= 1e-9) {
            return Err(Error::Validation(format!(
                "direction ({x}, {y}, {z}) is not a unit vector"
            )));
        }
        Ok(Direction { x, y, z })
    }

    /// Direction in the x–z plane at `degrees` from +z towards +x.
    pub fn in_xz_plane(degrees: f64) -> Self {
        let t = degrees.to_radians();
        Direction {
            x: t.sin(),
            y: 0.0,
            z: t.cos(),
        }
    }

    /// Polar angle from +z and azimuth from +x, both in degrees.
    pub fn spherical(polar_deg: f64, azimuth_deg: f64) -> Self {
        let (t, p) = (polar_deg.to_radians(), azimuth_deg.to_radians());
        Direction {
            x: t.sin() * p.cos(),
            y: t.sin() * p.sin(),
            z: t.cos(),
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    /// `σ·n` on the spin factor.
    pub fn pauli(&self) -> [[C64; 2]; 2] {
        [
            [C64::new(self.z, 0.0), C64::new(self.x, -self.y)],
            [C64::new(self.x, self.y), C64::new(-self.z, 0.0)],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellSetting {
    pub a: Direction,
    pub b: Direction,
    pub c: Direction,
    pub d: Direction,
}

impl BellSetting {
    /// Coplanar setting from x–z plane angles in degrees.
    pub fn coplanar(a: f64, b: f64, c: f64, d: f64) -> Self {
        BellSetting {
            a: Direction::in_xz_plane(a),
            b: Direction::in_xz_plane(b),
            c: Direction::in_xz_plane(c),
            d: Direction::in_xz_plane(d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleState {
    /// `(|↑R⟩₁|↓L⟩₂ − |↓L⟩₁|↑R⟩₂)/√2`, antisymmetrized product.
    ProductLike,
    /// `½(|↑↓⟩ − |↓↑⟩) ⊗ (|RL⟩ + |LR⟩)`, spin singlet shared between regions.
    EprBohm,
}

pub fn build_example_state(kind: ExampleState) -> TwoParticleState {
    let mut c = ComplexMatrix::zeros(BELL_DIM, BELL_DIM);
    let mut put = |i: usize, j: usize, v: f64| {
        c[(i, j)] = C64::new(v, 0.0);
        c[(j, i)] = C64::new(-v, 0.0);
    };
    match kind {
        ExampleState::ProductLike => {
            put(index(R, UP), index(L, DOWN), FRAC_1_SQRT_2);
        }
        ExampleState::EprBohm => {
            // ½[↑R↓L + ↑L↓R − ↓R↑L − ↓L↑R]
            put(index(R, UP), index(L, DOWN), 0.5);
            put(index(L, UP), index(R, DOWN), 0.5);
        }
    }
    TwoParticleState::new(c, Statistics::Fermion).expect("example states are valid")
}

/// `(σ·n) ⊗ P_loc` as a 4×4 single-particle operator.
fn local_spin(n: &Direction, location: usize) -> ComplexMatrix {
    let s = n.pauli();
    let mut m = ComplexMatrix::zeros(BELL_DIM, BELL_DIM);
    for (si, row) in s.iter().enumerate() {
        for (sj, &v) in row.iter().enumerate() {
            m[(index(location, si), index(location, sj))] = v;
        }
    }
    m
}

/// The two-particle correlation observable for directions `a` (Right) and `b` (Left).
pub fn correlation_operator(a: &Direction, b: &Direction) -> ComplexMatrix {
    let ar = local_spin(a, R);
    let bl = local_spin(b, L);
    &ar.kron(&bl) + &bl.kron(&ar)
}

/// Mean product of spin outcomes along `a` in region Right and `b` in region Left.
pub fn correlation(state: &TwoParticleState, a: &Direction, b: &Direction) -> Result<f64> {
    if state.dim() != BELL_DIM {
        return Err(Error::Validation(format!(
            "correlation needs the 4-dimensional spin⊗position space, got dimension {}",
            state.dim()
        )));
    }
    let psi = state.coeffs().as_slice();
    let opsi = correlation_operator(a, b).matvec(psi)?;
    let e = inner(psi, &opsi);
    if e.im.abs() > 1e-10 {
        return Err(Error::Internal(format!(
            "correlation has imaginary part {:e}",
            e.im
        )));
    }
    Ok(e.re)
}

fn chsh_value(ab: f64, ac: f64, bd: f64, cd: f64) -> f64 {
    (ab - ac).abs() + (bd + cd).abs()
}

/// `|E(a,b) − E(a,c)| + |E(b,d) + E(c,d)|`.
pub fn chsh(state: &TwoParticleState, s: &BellSetting) -> Result<f64> {
    Ok(chsh_value(
        correlation(state, &s.a, &s.b)?,
        correlation(state, &s.a, &s.c)?,
        correlation(state, &s.b, &s.d)?,
        correlation(state, &s.c, &s.d)?,
    ))
}

/// Which directions a CHSH scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanGrid {
    /// `steps` equally spaced angles in the x–z plane, starting at +z.
    Plane,
    /// `steps` polar × `steps` azimuthal angles; the poles appear once each.
    Sphere,
}

impl ScanGrid {
    pub fn directions(self, steps: usize) -> Vec<(Direction, [f64; 2])> {
        match self {
            ScanGrid::Plane => (0..steps)
                .map(|k| {
                    let deg = 360.0 * k as f64 / steps as f64;
                    (Direction::in_xz_plane(deg), [deg, 0.0])
                })
                .collect(),
            ScanGrid::Sphere => {
                let mut out = vec![(Direction::spherical(0.0, 0.0), [0.0, 0.0])];
                for i in 1..steps {
                    let polar = 180.0 * i as f64 / steps as f64;
                    for j in 0..steps {
                        let az = 360.0 * j as f64 / steps as f64;
                        out.push((Direction::spherical(polar, az), [polar, az]));
                    }
                }
                out.push((Direction::spherical(180.0, 0.0), [180.0, 0.0]));
                out
            }
        }
    }

    /// Number of settings a scan at `steps` evaluates.
    pub fn settings_count(self, steps: usize) -> u128 {
        let n = match self {
            ScanGrid::Plane => steps as u128,
            ScanGrid::Sphere => (steps.saturating_sub(1) * steps + 2) as u128,
        };
        n.pow(4)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub max_value: f64,
    pub argmax: BellSetting,
    /// Angles (degrees) of `a, b, c, d`: `[polar-or-plane angle, azimuth]`.
    pub angles: [[f64; 2]; 4],
}

/// Exhaustive coplanar CHSH scan with `grid_steps` angles per direction.
pub fn chsh_scan(state: &TwoParticleState, grid_steps: usize) -> Result<ScanResult> {
    chsh_scan_grid(state, grid_steps, ScanGrid::Plane)
}

/// Exhaustive CHSH scan over a direction grid.
///
/// All pairwise correlations are tabulated first; settings are visited in
/// lexicographic `(a, b, c, d)` index order and the first maximum wins, so the
/// result does not depend on how the work is split across threads.
pub fn chsh_scan_grid(
    state: &TwoParticleState,
    grid_steps: usize,
    grid: ScanGrid,
) -> Result<ScanResult> {
    if grid_steps < 4 {
        return Err(Error::Validation(format!(
            "grid_steps must be at least 4, got {grid_steps}"
        )));
    }
    if state.dim() != BELL_DIM {
        return Err(Error::Validation(format!(
            "CHSH scan needs the 4-dimensional spin⊗position space, got dimension {}",
            state.dim()
        )));
    }
    let dirs = grid.directions(grid_steps);
    let n = dirs.len();
    let table: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| correlation(state, &dirs[k / n].0, &dirs[k % n].0))
        .collect::<Result<_>>()?;
    let e = |i: usize, j: usize| table[i * n + j];

    let best = (0..n)
        .into_par_iter()
        .map(|ia| {
            let mut best = (f64::NEG_INFINITY, [ia, 0, 0, 0]);
            for ib in 0..n {
                for ic in 0..n {
                    let diff = (e(ia, ib) - e(ia, ic)).abs();
                    for id in 0..n {
                        let v = diff + (e(ib, id) + e(ic, id)).abs();
                        if v > best.0 {
                            best = (v, [ia, ib, ic, id]);
                        }
                    }
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, [usize::MAX; 4]),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        );

    let [ia, ib, ic, id] = best.1;
    Ok(ScanResult {
        max_value: best.0,
        argmax: BellSetting {
            a: dirs[ia].0,
            b: dirs[ib].0,
            c: dirs[ic].0,
            d: dirs[id].0,
        },
        angles: [dirs[ia].1, dirs[ib].1, dirs[ic].1, dirs[id].1],
    })
}

/// Tsirelson's bound `2√2`.
pub const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Degrees in `[0, 360)` for a coplanar direction, for reporting.
pub fn plane_angle_deg(d: &Direction) -> f64 {
    let a = d.x.atan2(d.z) * 180.0 / PI;
    if a < 0.0 {
        a + 360.0
    } else {
        a
    }
}
