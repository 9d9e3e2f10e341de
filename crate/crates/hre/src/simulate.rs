//! Monte Carlo harness contrasting the two reference-set solvers.
//!
//! Each trial draws a consistent ratio matrix from random weights, perturbs
//! it with multiplicative log-normal noise, keeps the true weights of a
//! random reference subset, and runs both solvers. The geometric solver must
//! produce a strictly positive ranking in every trial at every noise level;
//! the arithmetic solver is expected to degrade as inconsistency grows.
//!
//! Runs are reproducible: every trial derives its own generator from the
//! master seed, the cell coordinates, and the trial index, so aggregation is
//! independent of execution order and the parallel and serial drivers return
//! bit-identical results.

use rand::distr::Uniform;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{koczkodaj_index, PcMatrix};
use crate::problem::{HreProblem, ReferenceAssignment};
use crate::solver::{solve_arithmetic, solve_geometric, ArithmeticOutcome};

/// Weight magnitudes used by [`gen_consistent`]: log-uniform in [1/9, 9],
/// mirroring the conventional 1..9 judgment scale.
pub const WEIGHT_SPAN: f64 = 9.0;

/// How many concepts stay unknown in each trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KRule {
    /// Uniformly random in 1..=n-1 per trial.
    Random,
    /// The same count in every trial; must lie in 1..=n-1 for every n in
    /// the configured range.
    Fixed(usize),
}

/// Configuration of one experiment grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Inclusive range of matrix sizes.
    pub n_range: (usize, usize),
    pub k_rule: KRule,
    /// Trials per (n, sigma) cell.
    pub trials: u32,
    /// Noise levels; one result cell per (n, sigma) pair.
    pub sigmas: Vec<f64>,
    /// Judgment cap: perturbed entries are clamped to [1/bound, bound].
    pub scale_bound: f64,
    pub seed: u64,
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.n_range;
        if lo < 3 || hi > 64 || lo > hi {
            return Err(Error::BadConfig(format!(
                "n range must satisfy 3 <= lo <= hi <= 64, got {lo}..={hi}"
            )));
        }
        if self.trials == 0 {
            return Err(Error::BadConfig("trials must be at least 1".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::BadConfig("at least one sigma is required".into()));
        }
        for &s in &self.sigmas {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::BadConfig(format!(
                    "sigma must be finite and nonnegative, got {s}"
                )));
            }
        }
        if !self.scale_bound.is_finite() || self.scale_bound <= 1.0 {
            return Err(Error::BadConfig(format!(
                "scale bound must be greater than 1, got {}",
                self.scale_bound
            )));
        }
        if let KRule::Fixed(k) = self.k_rule {
            if k == 0 || k >= lo {
                return Err(Error::BadConfig(format!(
                    "fixed unknown count {k} must lie in 1..={}",
                    lo - 1
                )));
            }
        }
        Ok(())
    }
}

/// Aggregated counts for one (n, sigma) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellStats {
    pub n: usize,
    pub sigma: f64,
    pub trials: u32,
    pub geometric_feasible_rate: f64,
    pub arithmetic_feasible_rate: f64,
    pub mean_koczkodaj: f64,
    pub geometric_singular: u32,
    pub arithmetic_singular: u32,
    pub arithmetic_infeasible: u32,
}

/// Full experiment outcome, cells ordered by (n, sigma position).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub cells: Vec<CellStats>,
}

/// Consistent ratio matrix from weights drawn log-uniformly in
/// [1/WEIGHT_SPAN, WEIGHT_SPAN]. The same seed always yields the same matrix.
pub fn gen_consistent(n: usize, seed: u64) -> Result<PcMatrix> {
    PcMatrix::from_weights(&gen_weights(n, seed))
}

pub(crate) fn gen_weights(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = WEIGHT_SPAN.ln();
    let dist = Uniform::new_inclusive(-span, span).expect("finite bounds");
    (0..n).map(|_| dist.sample(&mut rng).exp()).collect()
}

/// Multiplies each upper-triangle entry by exp(g) with g ~ N(0, sigma),
/// mirrors exact reciprocals into the lower triangle, keeps the diagonal at
/// 1, and clamps entries to [1/scale_bound, scale_bound].
/// With sigma = 0 the input is returned unchanged.
pub fn perturb_reciprocal(
    matrix: &PcMatrix,
    sigma: f64,
    seed: u64,
    scale_bound: f64,
) -> Result<PcMatrix> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::BadConfig(format!(
            "sigma must be finite and nonnegative, got {sigma}"
        )));
    }
    if !scale_bound.is_finite() || scale_bound <= 1.0 {
        return Err(Error::BadConfig(format!(
            "scale bound must be greater than 1, got {scale_bound}"
        )));
    }
    if sigma == 0.0 {
        return Ok(matrix.clone());
    }
    let n = matrix.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).expect("validated sigma");
    let mut entries = vec![1.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let perturbed = matrix.get(i, j) * noise.sample(&mut rng).exp();
            let clamped = perturbed.clamp(1.0 / scale_bound, scale_bound);
            entries[i * n + j] = clamped;
            entries[j * n + i] = 1.0 / clamped;
        }
    }
    PcMatrix::from_entries(n, entries)
}

#[derive(Debug, Clone, Copy)]
enum ArithKind {
    Feasible,
    Infeasible,
    Singular,
}

#[derive(Debug, Clone, Copy)]
struct TrialRecord {
    cell: usize,
    geometric_ok: bool,
    arithmetic: ArithKind,
    koczkodaj: f64,
}

/// Runs the experiment grid with trials evaluated in parallel.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let jobs = job_count(config);
    let records: Vec<TrialRecord> = (0..jobs)
        .into_par_iter()
        .map(|job| run_trial(config, job))
        .collect();
    Ok(aggregate(config, &records))
}

/// Same grid, same results, single-threaded.
pub fn run_experiment_serial(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let jobs = job_count(config);
    let records: Vec<TrialRecord> = (0..jobs).map(|job| run_trial(config, job)).collect();
    Ok(aggregate(config, &records))
}

fn cell_coords(config: &ExperimentConfig) -> Vec<(usize, f64)> {
    let (lo, hi) = config.n_range;
    let mut cells = Vec::new();
    for n in lo..=hi {
        for &sigma in &config.sigmas {
            cells.push((n, sigma));
        }
    }
    cells
}

fn job_count(config: &ExperimentConfig) -> usize {
    cell_coords(config).len() * config.trials as usize
}

fn run_trial(config: &ExperimentConfig, job: usize) -> TrialRecord {
    let trials = config.trials as usize;
    let cell = job / trials;
    let trial = job % trials;
    let (n, sigma) = cell_coords(config)[cell];

    let trial_seed = mix(config.seed, &[cell as u64, trial as u64]);
    let weights = gen_weights(n, mix(trial_seed, &[1]));
    let base = PcMatrix::from_weights(&weights).expect("positive weights");
    let matrix = perturb_reciprocal(&base, sigma, mix(trial_seed, &[2]), config.scale_bound)
        .expect("validated noise parameters");

    let koczkodaj = koczkodaj_index(&matrix)
        .expect("perturbed matrices are reciprocal with n > 2 by construction");

    let mut rng = ChaCha8Rng::seed_from_u64(mix(trial_seed, &[3]));
    let k = match config.k_rule {
        KRule::Fixed(k) => k,
        KRule::Random => rng.random_range(1..n),
    };
    // Random subset of k unknowns; the rest keep their true weights.
    let mut concepts: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        concepts.swap(i, j);
    }
    let known: Vec<(usize, f64)> = concepts[k..]
        .iter()
        .map(|&c| (c + 1, weights[c]))
        .collect();
    let reference = ReferenceAssignment::from_pairs(&known).expect("valid references");
    let problem = HreProblem::new(matrix, reference).expect("valid problem");

    let geometric_ok = match solve_geometric(&problem, 10.0) {
        Ok(solution) => solution
            .priorities
            .values()
            .iter()
            .all(|v| v.is_finite() && *v > 0.0),
        Err(_) => false,
    };

    let arithmetic = match solve_arithmetic(&problem) {
        Ok(ArithmeticOutcome::Feasible(_)) => ArithKind::Feasible,
        Ok(ArithmeticOutcome::Infeasible { .. }) => ArithKind::Infeasible,
        Err(Error::Singular { .. }) => ArithKind::Singular,
        Err(_) => ArithKind::Singular,
    };

    TrialRecord {
        cell,
        geometric_ok,
        arithmetic,
        koczkodaj,
    }
}

/// Order-insensitive reduction: records are folded in job order, which is
/// identical for the serial and parallel drivers.
fn aggregate(config: &ExperimentConfig, records: &[TrialRecord]) -> ExperimentResult {
    let coords = cell_coords(config);
    let trials = config.trials;
    let mut cells: Vec<CellStats> = coords
        .iter()
        .map(|&(n, sigma)| CellStats {
            n,
            sigma,
            trials,
            geometric_feasible_rate: 0.0,
            arithmetic_feasible_rate: 0.0,
            mean_koczkodaj: 0.0,
            geometric_singular: 0,
            arithmetic_singular: 0,
            arithmetic_infeasible: 0,
        })
        .collect();

    let mut geo_ok = vec![0u32; coords.len()];
    let mut arith_ok = vec![0u32; coords.len()];
    let mut kocz_sum = vec![0.0f64; coords.len()];
    for record in records {
        let c = record.cell;
        if record.geometric_ok {
            geo_ok[c] += 1;
        }
        match record.arithmetic {
            ArithKind::Feasible => arith_ok[c] += 1,
            ArithKind::Infeasible => cells[c].arithmetic_infeasible += 1,
            ArithKind::Singular => cells[c].arithmetic_singular += 1,
        }
        kocz_sum[c] += record.koczkodaj;
    }
    for (c, cell) in cells.iter_mut().enumerate() {
        cell.geometric_feasible_rate = f64::from(geo_ok[c]) / f64::from(trials);
        cell.arithmetic_feasible_rate = f64::from(arith_ok[c]) / f64::from(trials);
        cell.mean_koczkodaj = kocz_sum[c] / f64::from(trials);
    }
    ExperimentResult { cells }
}

/// SplitMix-style avalanche, chained over the salt words.
pub(crate) fn mix(seed: u64, salt: &[u64]) -> u64 {
    let mut h = seed;
    for &s in salt {
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(s);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}
