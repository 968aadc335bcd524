//! Correlation-strength diagnostics and domain classification.
//!
//! The tables here play the role of referee devices in a correlation
//! experiment: each strategy pair selects a measurement-setting pair, and
//! the standard two-setting correlation sum distinguishes product
//! (factorizable) tables, general no-signaling tables inside the local
//! bound `|delta| <= 2`, tables inside the quantum bound `2*sqrt(2)`, and
//! super-quantum tables beyond it.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::error::{Error, Result};
use crate::params::NonFactParams;
use crate::table::{
    factorize, validate_causality, validate_normalization, validate_symmetry, Factorization,
    JointProbabilityTable,
};

/// The quantum ceiling `2*sqrt(2)` on the correlation sum.
pub const QUANTUM_BOUND: f64 = 2.0 * SQRT_2;

/// The local ceiling on the correlation sum.
pub const LOCAL_BOUND: f64 = 2.0;

/// Where a table sits relative to the correlation bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainClass {
    /// Product of per-player marginals.
    Factorizable,
    /// Correlated but within the local bound.
    LocalNonFactorizable,
    /// Beyond the local bound, within the quantum bound.
    Quantum,
    /// Beyond the quantum bound.
    SuperQuantum,
}

impl std::fmt::Display for DomainClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            DomainClass::Factorizable => "Factorizable",
            DomainClass::LocalNonFactorizable => "LocalNonFactorizable",
            DomainClass::Quantum => "Quantum",
            DomainClass::SuperQuantum => "SuperQuantum",
        };
        write!(f, "{name}")
    }
}

/// Classification outcome: the class, whether `|delta|` sits within `tol`
/// of the bound separating it from the next class, and the value itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: DomainClass,
    pub boundary: bool,
    pub delta: f64,
    pub factorization: Option<Factorization>,
}

/// Summary of the correlation sum against both bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub delta: f64,
    /// `|delta|` within `tol` of the quantum bound.
    pub saturates_quantum_bound: bool,
    /// `|delta|` exceeds the local bound by more than `tol`.
    pub violates_local: bool,
    /// `|delta|` exceeds the quantum bound by more than `tol`.
    pub super_quantum: bool,
}

/// The correlation sum `E11 + E12 + E21 - E22`, evaluated as
/// `2*(p1 + p4 + p5 + p8 + p9 + p12 + p14 + p15 - 2)`.
pub fn chsh_delta(table: &JointProbabilityTable) -> f64 {
    2.0 * (table.p(1)
        + table.p(4)
        + table.p(5)
        + table.p(8)
        + table.p(9)
        + table.p(12)
        + table.p(14)
        + table.p(15)
        - 2.0)
}

/// Closed form of [`chsh_delta`] on the classical embedding:
/// `delta = 4*(a - c + 2e - 1/2)`.
pub fn chsh_delta_embedding(np: &NonFactParams) -> f64 {
    4.0 * (np.a - np.c + 2.0 * np.e - 0.5)
}

/// Largest `|correlation sum|` over the eight standard sign placements
/// (which of the four settings carries the minus sign, up to overall sign).
pub fn chsh_delta_max_abs(table: &JointProbabilityTable) -> f64 {
    let correlator = |q: [f64; 4]| q[0] - q[1] - q[2] + q[3];
    let e = [
        correlator(table.quadrant(0, 0)),
        correlator(table.quadrant(0, 1)),
        correlator(table.quadrant(1, 0)),
        correlator(table.quadrant(1, 1)),
    ];
    let total: f64 = e.iter().sum();
    (0..4)
        .map(|k| (total - 2.0 * e[k]).abs())
        .fold(0.0, f64::max)
}

/// Whether embedding offsets respect the quantum bound:
/// `|a - c + 2e - 1/2| <= 1/sqrt(2) + tol`.
pub fn cirelson_ok(np: &NonFactParams, tol: f64) -> bool {
    (np.a - np.c + 2.0 * np.e - 0.5).abs() <= FRAC_1_SQRT_2 + tol
}

/// Evaluates the correlation sum of a table against both bounds.
pub fn evaluate(table: &JointProbabilityTable, tol: f64) -> ChshResult {
    let delta = chsh_delta(table);
    let ad = delta.abs();
    ChshResult {
        delta,
        saturates_quantum_bound: (ad - QUANTUM_BOUND).abs() <= tol,
        violates_local: ad > LOCAL_BOUND + tol,
        super_quantum: ad > QUANTUM_BOUND + tol,
    }
}

/// Classifies a normalized, symmetric, causal table by factorizability and
/// correlation strength. `|delta|` within `tol` of a bound classifies into
/// the lower class with the boundary flag set.
///
/// Fails with a constraint violation if any structural precondition misses
/// `tol`, naming the first offending family.
pub fn classify(table: &JointProbabilityTable, tol: f64) -> Result<Classification> {
    for (what, check) in [
        ("normalization", validate_normalization(table, tol)),
        ("symmetry", validate_symmetry(table, tol)),
        ("causality", validate_causality(table, tol)),
    ] {
        if !check.ok {
            return Err(Error::ConstraintViolation {
                what,
                residual: check.residual,
                tol,
            });
        }
    }
    let delta = chsh_delta(table);
    let ad = delta.abs();
    let factorization = factorize(table, tol);
    let (class, boundary) = if factorization.is_some() {
        (DomainClass::Factorizable, false)
    } else if ad <= LOCAL_BOUND + tol {
        (DomainClass::LocalNonFactorizable, (ad - LOCAL_BOUND).abs() <= tol)
    } else if ad <= QUANTUM_BOUND + tol {
        (DomainClass::Quantum, (ad - QUANTUM_BOUND).abs() <= tol)
    } else {
        (DomainClass::SuperQuantum, false)
    };
    Ok(Classification {
        class,
        boundary,
        delta,
        factorization,
    })
}
