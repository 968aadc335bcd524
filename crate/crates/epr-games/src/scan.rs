//! Grid sweeps over the embedding offsets with CSV output.
//!
//! The sweep enumerates `(a, b, c, d, e)` over a uniform grid, skips
//! combinations that do not form a valid table, and records the offset
//! summaries, correlation sum, domain class, and equilibrium set for each
//! surviving point. Rows are emitted in lexicographic parameter order and
//! all numbers use the shortest decimal that round-trips, so a scan is
//! byte-identical across runs and worker counts.

use std::io::Write;

use rayon::prelude::*;

use crate::chsh::{classify, DomainClass};
use crate::equilibrium::{find_equilibria, EquilibriumSet};
use crate::error::{Error, Result};
use crate::params::{build_embedding, vtriple_from_table, EpsilonTriple, NonFactParams};
use crate::table::PayoffMatrix;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub matrix: PayoffMatrix,
    pub step: f64,
    pub tol: f64,
}

/// One surviving grid point.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub np: NonFactParams,
    pub eps: EpsilonTriple,
    pub delta: f64,
    pub domain: DomainClass,
    pub equilibria: EquilibriumSet,
}

/// Grid values `0, step, 2*step, ...` up to 1 inclusive.
pub fn grid_values(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::OutOfRange {
            name: "step",
            value: step,
            range: "(0, 1]",
        });
    }
    let n = (1.0 / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| k as f64 * step).collect())
}

fn row_for(cfg: &ScanConfig, np: NonFactParams) -> Option<ScanRow> {
    let table = build_embedding(&np).ok()?;
    let cls = classify(&table, cfg.tol)
        .expect("tables from the embedding builder satisfy the structural constraints");
    let vt = vtriple_from_table(&table);
    let equilibria = find_equilibria(&cfg.matrix, &vt, table.p(13), table.p(14), cfg.tol);
    Some(ScanRow {
        np,
        eps: np.epsilons(),
        delta: cls.delta,
        domain: cls.class,
        equilibria,
    })
}

/// Runs the sweep; rows come back in lexicographic `(a, b, c, d, e)` order.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    let vals = grid_values(cfg.step)?;
    let mut points = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    for &e in &vals {
                        points.push(NonFactParams { a, b, c, d, e });
                    }
                }
            }
        }
    }
    // Ordered collect keeps the deterministic row order no matter how the
    // work is distributed.
    Ok(points
        .into_par_iter()
        .map(|np| row_for(cfg, np))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

/// Shortest decimal representation that round-trips to the same f64.
fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Writes rows as CSV with a fixed header. Equilibria are encoded
/// `x:y:kind` joined by `;`, payoffs `pa:pb` in matching order.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "a", "b", "c", "d", "e", "eps1", "eps2", "eps3", "delta", "domain", "ne_count", "ne_list",
        "payoff_list",
    ])
    .map_err(csv_err)?;
    for row in rows {
        let ne_list = row
            .equilibria
            .points
            .iter()
            .map(|ne| format!("{}:{}:{}", fmt(ne.x), fmt(ne.y), ne.kind))
            .collect::<Vec<_>>()
            .join(";");
        let payoff_list = row
            .equilibria
            .points
            .iter()
            .map(|ne| format!("{}:{}", fmt(ne.payoff_a), fmt(ne.payoff_b)))
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            fmt(row.np.a),
            fmt(row.np.b),
            fmt(row.np.c),
            fmt(row.np.d),
            fmt(row.np.e),
            fmt(row.eps.e1),
            fmt(row.eps.e2),
            fmt(row.eps.e3),
            fmt(row.delta),
            row.domain.to_string(),
            row.equilibria.points.len().to_string(),
            ne_list,
            payoff_list,
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("csv: {other:?}")),
    }
}
