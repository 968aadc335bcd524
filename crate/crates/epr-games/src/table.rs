//! Joint probability tables for a symmetric two-player, two-strategy game
//! and the structural checks every other module builds on.
//!
//! A referee hands the players one of four strategy pairs; for each pair a
//! 2x2 block of outcome probabilities describes the pair of +/-1 outcomes
//! the players observe. The sixteen entries `p1..p16` are stored as four
//! row-major quadrants:
//!
//! ```text
//!             S1'                S2'
//!   S1   p1  p2  p3  p4    p5  p6  p7  p8
//!   S2   p9 p10 p11 p12   p13 p14 p15 p16
//! ```
//!
//! with outcomes ordered `(+1,+1), (+1,-1), (-1,+1), (-1,-1)` inside each
//! quadrant. Three families of constraints matter:
//!
//! * normalization: each quadrant sums to 1 and entries lie in `[0, 1]`;
//! * symmetry: the table is invariant under swapping the players
//!   (`p2=p3`, `p5=p9`, `p6=p11`, `p7=p10`, `p8=p12`, `p14=p15`);
//! * causality: neither player's marginal distribution depends on the
//!   other player's strategy choice (eight sum equalities).
//!
//! Validators report residuals instead of failing so that near-valid
//! experimental tables can still be analyzed.

use crate::error::{Error, Result};

/// Default absolute tolerance for constraint checks and equilibrium margins.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Slack allowed when builders range-check computed entries. Absorbs
/// floating-point rounding without admitting tables that would fail the
/// residual checks at 1e-12.
pub(crate) const ENTRY_SLACK: f64 = 1e-12;

/// Player pairs whose entries must match for a player-symmetric table,
/// as 1-based `(i, j)` index pairs with `p_i = p_j`.
const SYMMETRY_PAIRS: [(usize, usize); 6] = [(2, 3), (5, 9), (6, 11), (7, 10), (8, 12), (14, 15)];

/// The eight no-signaling equalities `p_a + p_b = p_c + p_d` (1-based).
const CAUSALITY_EQS: [(usize, usize, usize, usize); 8] = [
    (1, 2, 5, 6),
    (1, 3, 9, 11),
    (9, 10, 13, 14),
    (5, 7, 13, 15),
    (3, 4, 7, 8),
    (11, 12, 15, 16),
    (2, 4, 10, 12),
    (6, 8, 14, 16),
];

/// Row player's payoff entries `(a1, a2, a3, a4)` for the outcome pairs
/// `(+1,+1), (+1,-1), (-1,+1), (-1,-1)`. The column player's payoffs are
/// the transpose `(a1, a3, a2, a4)`, which makes the game symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffMatrix {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl PayoffMatrix {
    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3), ("a4", a4)] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name: name.to_string(),
                    value: v,
                });
            }
        }
        Ok(Self { a1, a2, a3, a4 })
    }

    /// Row player's coefficients in outcome order.
    pub fn row_coeffs(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }

    /// Column player's coefficients in outcome order (transposed matrix).
    pub fn col_coeffs(&self) -> [f64; 4] {
        [self.a1, self.a3, self.a2, self.a4]
    }

    /// The payoff differences driving every equilibrium computation.
    pub fn deltas(&self) -> DeltaTriple {
        let d1 = self.a3 - self.a1;
        let d2 = self.a4 - self.a2;
        DeltaTriple { d1, d2, d3: d2 - d1 }
    }
}

/// Payoff differences `d1 = a3 - a1`, `d2 = a4 - a2`, `d3 = d2 - d1`.
/// Only constructed via [`PayoffMatrix::deltas`], so `d3` is always
/// consistent with the other two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTriple {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// A mixed-strategy profile: `x` and `y` are the probabilities with which
/// the row and column player pick their first strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyProfile {
    x: f64,
    y: f64,
}

impl StrategyProfile {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// Sixteen joint outcome probabilities, stored in `p1..p16` order.
///
/// Construction only rejects non-finite entries; whether the table is a
/// well-formed probability table is the validators' business.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProbabilityTable {
    entries: [f64; 16],
}

impl JointProbabilityTable {
    pub fn from_entries(entries: [f64; 16]) -> Result<Self> {
        for (i, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name: format!("p{}", i + 1),
                    value: *v,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64; 16] {
        &self.entries
    }

    /// 1-based accessor matching the `p1..p16` naming used throughout.
    pub fn p(&self, i: usize) -> f64 {
        self.entries[i - 1]
    }

    /// Outcome probabilities for strategy pair `(row, col)`, `0` meaning the
    /// first strategy. Quadrants are laid out `p1..p4`, `p5..p8`, `p9..p12`,
    /// `p13..p16`.
    pub fn quadrant(&self, row: usize, col: usize) -> [f64; 4] {
        let base = 4 * (2 * row + col);
        [
            self.entries[base],
            self.entries[base + 1],
            self.entries[base + 2],
            self.entries[base + 3],
        ]
    }
}

/// Outcome of a single constraint family check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintCheck {
    pub ok: bool,
    /// Largest absolute violation observed; zero for a perfectly clean table.
    pub residual: f64,
}

impl ConstraintCheck {
    fn from_residual(residual: f64, tol: f64) -> Self {
        Self {
            ok: residual <= tol,
            residual,
        }
    }
}

/// Product decomposition of a factorizable table: `r`/`s` are the row
/// player's +1 marginals under her two strategies, `r_prime`/`s_prime` the
/// column player's. Player-symmetric tables have `r = r_prime` and
/// `s = s_prime`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub r: f64,
    pub s: f64,
    pub r_prime: f64,
    pub s_prime: f64,
}

/// Combined validator output.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub normalization: ConstraintCheck,
    pub symmetry: ConstraintCheck,
    pub causality: ConstraintCheck,
    pub factorization: Option<Factorization>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.normalization.ok && self.symmetry.ok && self.causality.ok
    }
}

/// Checks that every entry lies in `[0, 1]` and each quadrant sums to 1.
pub fn validate_normalization(table: &JointProbabilityTable, tol: f64) -> ConstraintCheck {
    let mut residual: f64 = 0.0;
    for v in table.entries() {
        residual = residual.max(-v).max(v - 1.0);
    }
    for row in 0..2 {
        for col in 0..2 {
            let sum: f64 = table.quadrant(row, col).iter().sum();
            residual = residual.max((sum - 1.0).abs());
        }
    }
    ConstraintCheck::from_residual(residual.max(0.0), tol)
}

/// Checks invariance under swapping the two players.
pub fn validate_symmetry(table: &JointProbabilityTable, tol: f64) -> ConstraintCheck {
    let residual = SYMMETRY_PAIRS
        .iter()
        .map(|&(i, j)| (table.p(i) - table.p(j)).abs())
        .fold(0.0, f64::max);
    ConstraintCheck::from_residual(residual, tol)
}

/// Checks the eight no-signaling equalities: each player's outcome marginals
/// must not depend on which strategy the other player selected.
pub fn validate_causality(table: &JointProbabilityTable, tol: f64) -> ConstraintCheck {
    let residual = CAUSALITY_EQS
        .iter()
        .map(|&(a, b, c, d)| ((table.p(a) + table.p(b)) - (table.p(c) + table.p(d))).abs())
        .fold(0.0, f64::max);
    ConstraintCheck::from_residual(residual, tol)
}

/// Runs all three validators and the factorization probe.
pub fn validate(table: &JointProbabilityTable, tol: f64) -> ValidationReport {
    ValidationReport {
        normalization: validate_normalization(table, tol),
        symmetry: validate_symmetry(table, tol),
        causality: validate_causality(table, tol),
        factorization: factorize(table, tol),
    }
}

/// Expected entries of a fully factorized table with row marginals `(r, s)`
/// and column marginals `(rp, sp)`.
fn product_entries(r: f64, s: f64, rp: f64, sp: f64) -> [f64; 16] {
    let outer = |p: f64, q: f64| [p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)];
    let mut entries = [0.0; 16];
    entries[0..4].copy_from_slice(&outer(r, rp));
    entries[4..8].copy_from_slice(&outer(r, sp));
    entries[8..12].copy_from_slice(&outer(s, rp));
    entries[12..16].copy_from_slice(&outer(s, sp));
    entries
}

/// Tests whether the table is a product of per-player marginals.
///
/// The only possible marginals are the sums `r = p1+p2`, `r' = p1+p3`,
/// `s = p13+p14`, `s' = p13+p15`; the table factorizes iff all sixteen
/// product equations hold for them within `tol`. Returns the marginals on
/// success, `None` otherwise.
pub fn factorize(table: &JointProbabilityTable, tol: f64) -> Option<Factorization> {
    let r = table.p(1) + table.p(2);
    let r_prime = table.p(1) + table.p(3);
    let s = table.p(13) + table.p(14);
    let s_prime = table.p(13) + table.p(15);
    let expected = product_entries(r, s, r_prime, s_prime);
    let fits = table
        .entries()
        .iter()
        .zip(expected.iter())
        .all(|(actual, want)| (actual - want).abs() <= tol);
    fits.then_some(Factorization {
        r,
        s,
        r_prime,
        s_prime,
    })
}

/// Expected payoffs for each pure strategy pair, as `(row, col)` pairs in
/// quadrant order: `result[i][j]` is the payoff pair when the row player
/// picks strategy `i+1` and the column player strategy `j+1`.
pub fn quadrant_payoffs(table: &JointProbabilityTable, m: &PayoffMatrix) -> [[(f64, f64); 2]; 2] {
    let row_c = m.row_coeffs();
    let col_c = m.col_coeffs();
    let mut out = [[(0.0, 0.0); 2]; 2];
    for (row, out_row) in out.iter_mut().enumerate() {
        for (col, cell) in out_row.iter_mut().enumerate() {
            let q = table.quadrant(row, col);
            let pa: f64 = q.iter().zip(row_c.iter()).map(|(p, a)| p * a).sum();
            let pb: f64 = q.iter().zip(col_c.iter()).map(|(p, b)| p * b).sum();
            *cell = (pa, pb);
        }
    }
    out
}

/// Range-checks a computed entry, naming it on failure. Tiny excursions
/// outside `[0, 1]` from rounding are tolerated.
pub(crate) fn check_entry(index_1based: usize, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite {
            name: format!("p{index_1based}"),
            value,
        });
    }
    if !(-ENTRY_SLACK..=1.0 + ENTRY_SLACK).contains(&value) {
        return Err(Error::InvalidProbability {
            name: format!("p{index_1based}"),
            value,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Both players always observe +1 under (S1, S1'), matching outcomes
    /// under the other pairs: p1 = p6 = p11 = p16 = 1.
    pub(crate) fn deterministic_classical() -> JointProbabilityTable {
        let mut e = [0.0; 16];
        e[0] = 1.0;
        e[5] = 1.0;
        e[10] = 1.0;
        e[15] = 1.0;
        JointProbabilityTable::from_entries(e).unwrap()
    }

    fn uniform() -> JointProbabilityTable {
        JointProbabilityTable::from_entries([0.25; 16]).unwrap()
    }

    #[test]
    fn deterministic_table_is_clean() {
        let t = deterministic_classical();
        let report = validate(&t, DEFAULT_TOL);
        assert!(report.normalization.ok);
        assert_eq!(report.normalization.residual, 0.0);
        assert!(report.symmetry.ok);
        assert!(report.causality.ok);
    }

    #[test]
    fn zero_table_fails_normalization_with_unit_residual() {
        let t = JointProbabilityTable::from_entries([0.0; 16]).unwrap();
        let check = validate_normalization(&t, DEFAULT_TOL);
        assert!(!check.ok);
        assert_eq!(check.residual, 1.0);
    }

    #[test]
    fn symmetry_violation_reports_largest_gap() {
        let mut e = [0.25; 16];
        e[1] = 0.3; // p2
        e[2] = 0.1; // p3
        e[0] = 0.35; // keep the quadrant normalized
        let t = JointProbabilityTable::from_entries(e).unwrap();
        let check = validate_symmetry(&t, DEFAULT_TOL);
        assert!(!check.ok);
        assert!((check.residual - 0.2).abs() < 1e-15);
    }

    #[test]
    fn asymmetric_product_table_fails_symmetry() {
        // r = 1, r' = 0.5 gives p2 = 0.5 but p3 = 0.
        let t = JointProbabilityTable::from_entries(product_entries(1.0, 0.5, 0.5, 0.5)).unwrap();
        assert!(!validate_symmetry(&t, DEFAULT_TOL).ok);
        // Still a legitimate product table.
        assert!(validate_normalization(&t, DEFAULT_TOL).ok);
        assert!(factorize(&t, DEFAULT_TOL).is_some());
    }

    #[test]
    fn signaling_table_fails_causality() {
        // Row player's S1 marginal is 1 against S1' but 0 against S2'.
        let mut e = [0.0; 16];
        e[0] = 1.0; // p1: (+1,+1) under (S1,S1')
        e[7] = 1.0; // p8: (-1,-1) under (S1,S2')
        e[10] = 1.0;
        e[15] = 1.0;
        let t = JointProbabilityTable::from_entries(e).unwrap();
        let check = validate_causality(&t, DEFAULT_TOL);
        assert!(!check.ok);
        assert_eq!(check.residual, 1.0);
    }

    #[test]
    fn factorize_recovers_marginals_on_product_tables() {
        let t = JointProbabilityTable::from_entries(product_entries(0.7, 0.2, 0.7, 0.2)).unwrap();
        let f = factorize(&t, 1e-12).expect("product table must factorize");
        assert!((f.r - 0.7).abs() < 1e-12);
        assert!((f.s - 0.2).abs() < 1e-12);
        assert!((f.r_prime - 0.7).abs() < 1e-12);
        assert!((f.s_prime - 0.2).abs() < 1e-12);
    }

    #[test]
    fn factorize_grid_roundtrip() {
        // 0.05 grid over both marginals.
        for i in 0..=20 {
            for j in 0..=20 {
                let (r, s) = (i as f64 * 0.05, j as f64 * 0.05);
                let t =
                    JointProbabilityTable::from_entries(product_entries(r, s, r, s)).unwrap();
                let f = factorize(&t, 1e-12)
                    .unwrap_or_else(|| panic!("({r}, {s}) must factorize"));
                assert!((f.r - r).abs() <= 1e-12);
                assert!((f.s - s).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn factorize_deterministic_table_is_exact() {
        let f = factorize(&deterministic_classical(), 0.0).unwrap();
        assert_eq!((f.r, f.s, f.r_prime, f.s_prime), (1.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn factorize_rejects_correlated_tables() {
        // Perfectly correlated outcomes in every quadrant: p1 = p4 = 1/2.
        let mut e = [0.0; 16];
        for base in [0, 4, 8, 12] {
            e[base] = 0.5;
            e[base + 3] = 0.5;
        }
        let t = JointProbabilityTable::from_entries(e).unwrap();
        assert!(factorize(&t, DEFAULT_TOL).is_none());
    }

    #[test]
    fn quadrant_payoffs_pick_out_pure_outcomes() {
        let m = PayoffMatrix::new(3.0, 0.0, 5.0, 1.0).unwrap();
        let qp = quadrant_payoffs(&deterministic_classical(), &m);
        // (S1,S1') is certain (+1,+1); the others are certain (+1,-1) /
        // (-1,+1) / (-1,-1) respectively.
        assert_eq!(qp[0][0], (3.0, 3.0));
        assert_eq!(qp[0][1], (0.0, 5.0));
        assert_eq!(qp[1][0], (5.0, 0.0));
        assert_eq!(qp[1][1], (1.0, 1.0));
    }

    #[test]
    fn quadrant_payoffs_average_under_uniform_table() {
        let m = PayoffMatrix::new(3.0, 0.0, 5.0, 1.0).unwrap();
        let qp = quadrant_payoffs(&uniform(), &m);
        for row in qp {
            for (pa, pb) in row {
                assert!((pa - 2.25).abs() < 1e-15);
                assert!((pb - 2.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn symmetric_tables_swap_payoffs_across_the_diagonal() {
        // For player-symmetric tables the column player's payoff at (i, j)
        // equals the row player's at (j, i).
        let t = JointProbabilityTable::from_entries(product_entries(0.8, 0.3, 0.8, 0.3)).unwrap();
        let m = PayoffMatrix::new(4.0, 1.0, 3.0, 3.0).unwrap();
        let qp = quadrant_payoffs(&t, &m);
        for i in 0..2 {
            for j in 0..2 {
                assert!((qp[i][j].1 - qp[j][i].0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn profile_rejects_out_of_range_coordinates() {
        assert!(StrategyProfile::new(1.2, 0.0).is_err());
        assert!(StrategyProfile::new(0.5, -0.1).is_err());
        assert!(StrategyProfile::new(f64::NAN, 0.5).is_err());
        assert!(StrategyProfile::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn table_rejects_non_finite_entries() {
        let mut e = [0.0; 16];
        e[3] = f64::NAN;
        assert!(JointProbabilityTable::from_entries(e).is_err());
    }

    #[test]
    fn deltas_are_consistent() {
        let m = PayoffMatrix::new(3.0, 0.0, 5.0, 1.0).unwrap();
        let d = m.deltas();
        assert_eq!((d.d1, d.d2, d.d3), (2.0, 1.0, -1.0));
    }
}
