//! JSON report shapes printed by the subcommands.

use identent::bell::ScanResult;
use identent::criteria::Witness;
use identent::{Classification, PropertyReport, SchmidtData, Tolerances};
use serde::{Deserialize, Serialize};

use crate::files::{matrix_to_pairs, to_pairs, Pair, StatisticsName};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub phi: Vec<Pair>,
    pub chi: Vec<Pair>,
}

impl From<&Witness> for WitnessPair {
    fn from(w: &Witness) -> Self {
        WitnessPair {
            phi: to_pairs(&w.phi),
            chi: to_pairs(&w.chi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancesUsed {
    pub fact: f64,
    pub rank: f64,
    pub classify: f64,
}

impl From<&Tolerances> for TolerancesUsed {
    fn from(t: &Tolerances) -> Self {
        TolerancesUsed {
            fact: t.fact,
            rank: t.rank,
            classify: t.classify,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub reconstruction: f64,
    pub unitarity_defect: f64,
}

impl From<&SchmidtData> for Residuals {
    fn from(s: &SchmidtData) -> Self {
        Residuals {
            reconstruction: s.residual,
            unitarity_defect: s.unitarity_defect,
        }
    }
}

/// Output of `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub statistics: StatisticsName,
    pub dimension: usize,
    pub verdict: String,
    pub subcase: String,
    pub slater_or_schmidt_number: usize,
    pub coefficients: Vec<f64>,
    pub entropy: f64,
    pub witness: Option<WitnessPair>,
    pub tolerances: TolerancesUsed,
    pub residuals: Residuals,
}

impl Report {
    pub fn new(c: &Classification, dimension: usize, tol: &Tolerances) -> Self {
        Report {
            statistics: c.schmidt.statistics.into(),
            dimension,
            verdict: c.verdict.to_string(),
            subcase: c.subcase.as_str().to_string(),
            slater_or_schmidt_number: c.slater_or_schmidt_number,
            coefficients: c.schmidt.coefficients.clone(),
            entropy: c.entropy,
            witness: c.witness.as_ref().map(WitnessPair::from),
            tolerances: tol.into(),
            residuals: (&c.schmidt).into(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<24} {v}\n"));
        line(
            "statistics",
            format!("{:?}", self.statistics).to_lowercase(),
        );
        line("dimension", self.dimension.to_string());
        line("verdict", self.verdict.clone());
        line("subcase", self.subcase.clone());
        line(
            "slater_or_schmidt_number",
            self.slater_or_schmidt_number.to_string(),
        );
        line("coefficients", format!("{:?}", self.coefficients));
        line("entropy", self.entropy.to_string());
        line(
            "witness",
            if self.witness.is_some() {
                "present"
            } else {
                "none"
            }
            .to_string(),
        );
        line("residual", format!("{:e}", self.residuals.reconstruction));
        line(
            "unitarity_defect",
            format!("{:e}", self.residuals.unitarity_defect),
        );
        s
    }
}

/// Output of `decompose`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub statistics: StatisticsName,
    pub dimension: usize,
    pub count: usize,
    pub coefficients: Vec<f64>,
    pub weights: Vec<f64>,
    /// Unitary basis, row-major.
    pub basis: Vec<Vec<Pair>>,
    pub residuals: Residuals,
}

impl DecompositionReport {
    pub fn new(s: &SchmidtData) -> Self {
        DecompositionReport {
            statistics: s.statistics.into(),
            dimension: s.basis.rows(),
            count: s.count,
            coefficients: s.coefficients.clone(),
            weights: s.weights(),
            basis: matrix_to_pairs(&s.basis),
            residuals: s.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectorReport {
    pub projector: Vec<Pair>,
    pub e_p_value: f64,
    pub pp_value: f64,
    pub exactly_one_value: f64,
}

impl From<&PropertyReport> for ProjectorReport {
    fn from(r: &PropertyReport) -> Self {
        ProjectorReport {
            projector: to_pairs(&r.projector_state),
            e_p_value: r.e_p_value,
            pp_value: r.pp_value,
            exactly_one_value: r.exactly_one_value(),
        }
    }
}

/// Output of `properties` without `--projector`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributionReport {
    pub attributed: bool,
    pub witness: Option<WitnessReports>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReports {
    pub phi: ProjectorReport,
    pub chi: ProjectorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correlations {
    pub ab: f64,
    pub ac: f64,
    pub bd: f64,
    pub cd: f64,
}

/// Output of `bell --setting`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellReport {
    pub state: String,
    pub setting_deg: [f64; 4],
    pub correlations: Correlations,
    pub chsh: f64,
    pub classical_bound: f64,
    pub violates_classical_bound: bool,
}

/// Output of `bell --scan`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub state: String,
    pub grid: String,
    pub steps: usize,
    pub settings_evaluated: u128,
    pub max_chsh: f64,
    /// `[angle, azimuth]` in degrees for `a, b, c, d`; the azimuth is 0 on the plane grid.
    pub argmax_deg: [[f64; 2]; 4],
    pub violates_classical_bound: bool,
}

impl ScanReport {
    pub fn new(state: &str, grid: &str, steps: usize, evaluated: u128, r: &ScanResult) -> Self {
        ScanReport {
            state: state.to_string(),
            grid: grid.to_string(),
            steps,
            settings_evaluated: evaluated,
            max_chsh: r.max_value,
            argmax_deg: r.angles,
            violates_classical_bound: r.max_value > 2.0 + 1e-9,
        }
    }
}
