//! Machine-readable reports: fixed key order, fixed significant-digit
//! rounding, and a digest of the canonicalized inputs, so identical inputs
//! and flags always produce byte-identical output.

use serde::Serialize;
use sha2::{Digest, Sha256};

use hre::{
    CellStats, ConsistencyReport, ExperimentConfig, OptimalityReport, PcMatrix,
    ReferenceAssignment,
};

/// Rounds to `sig` significant decimal digits through the decimal formatter,
/// so the kept digits are exactly what a human would read.
pub fn round_sig(x: f64, sig: u8) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", sig.max(1) as usize - 1, x)
        .parse()
        .expect("formatted float parses back")
}

pub fn round_all(values: &[f64], sig: u8) -> Vec<f64> {
    values.iter().map(|&v| round_sig(v, sig)).collect()
}

pub fn round_consistency(report: &ConsistencyReport, sig: u8) -> ConsistencyReport {
    let mut out = report.clone();
    for v in &mut out.violations {
        v.product = round_sig(v.product, sig);
    }
    out.koczkodaj = out.koczkodaj.map(|k| round_sig(k, sig));
    out
}

pub fn round_optimality(report: &OptimalityReport, sig: u8) -> OptimalityReport {
    let mut out = report.clone();
    out.error_value = round_sig(out.error_value, sig);
    out.gradient_max = round_sig(out.gradient_max, sig);
    out
}

/// SHA-256 over the exact bit patterns of the inputs, independent of
/// formatting and key order in the source files.
pub fn input_digest(matrix: &PcMatrix, known: Option<&ReferenceAssignment>) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"pc-input-v1");
    hasher.update((matrix.n() as u64).to_le_bytes());
    for &entry in matrix.entries() {
        hasher.update(entry.to_bits().to_le_bytes());
    }
    if let Some(reference) = known {
        hasher.update(b"known");
        for (index, value) in reference.iter() {
            hasher.update((index as u64).to_le_bytes());
            hasher.update(value.to_bits().to_le_bytes());
        }
    }
    format!("sha256:{:x}", hasher.finalize())
}

/// Ranking report. Key order is the declaration order below and is part of
/// the output contract.
#[derive(Debug, Serialize)]
pub struct RankReport {
    pub method: String,
    pub n: usize,
    pub feasible: bool,
    /// Raw priorities in natural units, or the normalized values when the
    /// caller asked for normalized output. On an infeasible arithmetic run
    /// these are the raw solved values and may be nonpositive.
    pub priorities: Vec<f64>,
    pub normalized: Option<Vec<f64>>,
    pub ranking: Option<Vec<usize>>,
    pub warnings: Vec<String>,
    pub consistency: ConsistencyReport,
    pub optimality: Option<OptimalityReport>,
    pub input_digest: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub n: usize,
    #[serde(flatten)]
    pub consistency: ConsistencyReport,
    pub input_digest: String,
}

#[derive(Debug, Serialize)]
pub struct DiagnoseReport {
    pub method: Option<String>,
    pub n: usize,
    pub priorities: Vec<f64>,
    pub normalized: Vec<f64>,
    pub optimality: OptimalityReport,
    pub consistency: ConsistencyReport,
    pub warnings: Vec<String>,
    pub input_digest: String,
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub config: ExperimentConfig,
    pub cells: Vec<CellStats>,
}

pub fn emit_json<T: Serialize>(report: &T) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
    out.push('\n');
    out
}

/// CSV table of the simulation cells, one line per (n, sigma) cell.
pub fn simulate_csv(cells: &[CellStats]) -> String {
    let mut out = String::from(
        "n,sigma,trials,geometric_feasible_rate,arithmetic_feasible_rate,\
         mean_koczkodaj,geometric_singular,arithmetic_singular,arithmetic_infeasible\n",
    );
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.n,
            c.sigma,
            c.trials,
            c.geometric_feasible_rate,
            c.arithmetic_feasible_rate,
            c.mean_koczkodaj,
            c.geometric_singular,
            c.arithmetic_singular,
            c.arithmetic_infeasible,
        ));
    }
    out
}
