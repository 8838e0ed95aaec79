//! On-disk JSON formats: state files and single-particle vectors.

use std::path::Path;

use identent::linalg::ComplexMatrix;
use identent::states::{antisymmetrize_product, symmetrize_product};
use identent::tolerance::STATE_TOL;
use identent::{Statistics, TwoParticleState, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A complex number as `[re, im]`.
pub type Pair = [f64; 2];

pub fn to_pairs(v: &[C64]) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn from_pairs(v: &[Pair]) -> Vec<C64> {
    v.iter().map(|p| C64::new(p[0], p[1])).collect()
}

pub fn matrix_to_pairs(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| to_pairs(&m.row(i))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsName {
    Fermion,
    Boson,
}

impl From<StatisticsName> for Statistics {
    fn from(s: StatisticsName) -> Self {
        match s {
            StatisticsName::Fermion => Statistics::Fermion,
            StatisticsName::Boson => Statistics::Boson,
        }
    }
}

impl From<Statistics> for StatisticsName {
    fn from(s: Statistics) -> Self {
        match s {
            Statistics::Fermion => StatisticsName::Fermion,
            Statistics::Boson => StatisticsName::Boson,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symmetrize,
    Antisymmetrize,
}

impl Mode {
    pub fn statistics(self) -> StatisticsName {
        match self {
            Mode::Symmetrize => StatisticsName::Boson,
            Mode::Antisymmetrize => StatisticsName::Fermion,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub phi: Vec<Pair>,
    pub chi: Vec<Pair>,
    pub mode: Mode,
}

/// Serialized two-particle state: either a full coefficient matrix or a
/// product to be (anti)symmetrized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dimension: usize,
    pub statistics: StatisticsName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Product>,
}

impl StateFile {
    pub fn from_product(phi: &[C64], chi: &[C64], mode: Mode) -> Self {
        StateFile {
            dimension: phi.len(),
            statistics: mode.statistics(),
            coefficients: None,
            product: Some(Product {
                phi: to_pairs(phi),
                chi: to_pairs(chi),
                mode,
            }),
        }
    }

    pub fn from_state(state: &TwoParticleState) -> Self {
        StateFile {
            dimension: state.dim(),
            statistics: state.statistics().into(),
            coefficients: Some(matrix_to_pairs(state.coeffs())),
            product: None,
        }
    }

    pub fn to_state(&self) -> Result<TwoParticleState, CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Input("dimension must be positive".into()));
        }
        let stats = Statistics::from(self.statistics);
        match (&self.coefficients, &self.product) {
            (Some(rows), None) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Input(format!(
                        "coefficients must be a {n}x{n} array of [re, im] pairs"
                    )));
                }
                let rows: Vec<Vec<C64>> = rows.iter().map(|r| from_pairs(r)).collect();
                let m = ComplexMatrix::from_rows(&rows)?;
                Ok(TwoParticleState::from_coefficients(m, stats, STATE_TOL)?)
            }
            (None, Some(p)) => {
                if p.mode.statistics() != self.statistics {
                    return Err(CliError::Input(format!(
                        "mode {:?} does not produce {} states",
                        p.mode,
                        stats.as_str()
                    )));
                }
                if p.phi.len() != n || p.chi.len() != n {
                    return Err(CliError::Input(format!(
                        "phi and chi must have {n} entries, got {} and {}",
                        p.phi.len(),
                        p.chi.len()
                    )));
                }
                let (phi, chi) = (from_pairs(&p.phi), from_pairs(&p.chi));
                Ok(match p.mode {
                    Mode::Symmetrize => symmetrize_product(&phi, &chi)?,
                    Mode::Antisymmetrize => antisymmetrize_product(&phi, &chi)?,
                })
            }
            _ => Err(CliError::Input(
                "state file needs exactly one of `coefficients` or `product`".into(),
            )),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

pub fn read_state(path: &Path) -> Result<TwoParticleState, CliError> {
    let file: StateFile = parse(&read(path)?, &path.display().to_string())?;
    file.to_state()
}

/// A vector given inline as JSON (`[[1,0],[0,0]]`) or as a path to a JSON file.
pub fn read_vector(arg: &str) -> Result<Vec<C64>, CliError> {
    let pairs: Vec<Pair> = if arg.trim_start().starts_with('[') {
        parse(arg, "inline vector")?
    } else {
        parse(&read(Path::new(arg))?, arg)?
    };
    if pairs.is_empty() {
        return Err(CliError::Input(format!("{arg}: vector is empty")));
    }
    Ok(from_pairs(&pairs))
}
