//! Monte Carlo referee protocol.
//!
//! Each run draws the players' strategy selections from their mixtures
//! (row player first, then column player), then draws the joint outcome
//! from the selected quadrant by inverse CDF in stored entry order. Runs
//! are processed in fixed-size chunks, each with its own deterministic
//! stream seeded `seed ^ chunk_index`, and the per-chunk integer tallies
//! are merged additively. Because counts are integers and all statistics
//! derive from the merged counts, results are bit-identical for a given
//! `(table, matrix, config)` regardless of how many workers participate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::table::{
    validate_normalization, JointProbabilityTable, PayoffMatrix, StrategyProfile, DEFAULT_TOL,
};

/// Runs per independent chunk; chunk boundaries (not worker count) decide
/// which stream serves which run.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub runs: u64,
    pub seed: u64,
    pub profile: StrategyProfile,
}

/// Tallies and derived statistics of one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    /// `counts[pair][outcome]`: strategy pairs in quadrant order
    /// (S1S1', S1S2', S2S1', S2S2'), outcomes in stored entry order.
    pub counts: [[u64; 4]; 4],
    pub runs: u64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub stderr_a: f64,
    pub stderr_b: f64,
}

impl SimResult {
    /// Empirical probability of each strategy pair.
    pub fn pair_frequencies(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (pair, row) in self.counts.iter().enumerate() {
            out[pair] = row.iter().sum::<u64>() as f64 / self.runs as f64;
        }
        out
    }
}

fn simulate_chunk(
    quadrants: &[[f64; 4]; 4],
    sums: &[f64; 4],
    x: f64,
    y: f64,
    runs: u64,
    seed: u64,
) -> [[u64; 4]; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [[0u64; 4]; 4];
    for _ in 0..runs {
        let ua: f64 = rng.random();
        let ub: f64 = rng.random();
        let uo: f64 = rng.random();
        let row = usize::from(ua >= x);
        let col = usize::from(ub >= y);
        let pair = 2 * row + col;
        // Inverse CDF over the quadrant, renormalized by its exact sum so
        // sub-1 rounding in the entries cannot bias the final cell.
        let target = uo * sums[pair];
        let mut acc = 0.0;
        let mut outcome = 3;
        for (k, p) in quadrants[pair].iter().enumerate() {
            acc += p;
            if target < acc {
                outcome = k;
                break;
            }
        }
        counts[pair][outcome] += 1;
    }
    counts
}

fn merge(mut left: [[u64; 4]; 4], right: [[u64; 4]; 4]) -> [[u64; 4]; 4] {
    for (l, r) in left.iter_mut().zip(right.iter()) {
        for (a, b) in l.iter_mut().zip(r.iter()) {
            *a += b;
        }
    }
    left
}

fn mean_and_stderr(outcome_totals: &[u64; 4], coeffs: &[f64; 4], runs: u64) -> (f64, f64) {
    let n = runs as f64;
    let mean = outcome_totals
        .iter()
        .zip(coeffs)
        .map(|(&c, &v)| c as f64 * v)
        .sum::<f64>()
        / n;
    if runs < 2 {
        return (mean, 0.0);
    }
    let ss = outcome_totals
        .iter()
        .zip(coeffs)
        .map(|(&c, &v)| c as f64 * (v - mean) * (v - mean))
        .sum::<f64>();
    let variance = (ss / (n - 1.0)).max(0.0);
    (mean, (variance / n).sqrt())
}

/// Simulates `cfg.runs` referee rounds and tallies outcomes.
///
/// Rejects tables that are not normalized within the default tolerance; a
/// skewed quadrant would silently bias the draw. `runs` must be positive.
pub fn simulate(
    table: &JointProbabilityTable,
    m: &PayoffMatrix,
    cfg: &SimConfig,
) -> Result<SimResult> {
    if cfg.runs == 0 {
        return Err(Error::OutOfRange {
            name: "runs",
            value: 0.0,
            range: "[1, u64::MAX]",
        });
    }
    let norm = validate_normalization(table, DEFAULT_TOL);
    if !norm.ok {
        return Err(Error::ConstraintViolation {
            what: "normalization",
            residual: norm.residual,
            tol: DEFAULT_TOL,
        });
    }
    let quadrants = [
        table.quadrant(0, 0),
        table.quadrant(0, 1),
        table.quadrant(1, 0),
        table.quadrant(1, 1),
    ];
    let sums = [
        quadrants[0].iter().sum::<f64>(),
        quadrants[1].iter().sum::<f64>(),
        quadrants[2].iter().sum::<f64>(),
        quadrants[3].iter().sum::<f64>(),
    ];
    let (x, y) = (cfg.profile.x(), cfg.profile.y());
    let chunks = cfg.runs.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let remaining = cfg.runs - i * CHUNK;
            let n = remaining.min(CHUNK);
            simulate_chunk(&quadrants, &sums, x, y, n, cfg.seed ^ i)
        })
        .reduce(|| [[0u64; 4]; 4], merge);

    let mut outcome_totals = [0u64; 4];
    for row in &counts {
        for (t, c) in outcome_totals.iter_mut().zip(row.iter()) {
            *t += c;
        }
    }
    let (mean_a, stderr_a) = mean_and_stderr(&outcome_totals, &m.row_coeffs(), cfg.runs);
    let (mean_b, stderr_b) = mean_and_stderr(&outcome_totals, &m.col_coeffs(), cfg.runs);
    Ok(SimResult {
        counts,
        runs: cfg.runs,
        mean_a,
        mean_b,
        stderr_a,
        stderr_b,
    })
}
