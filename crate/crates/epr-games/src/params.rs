//! Parameterized table builders.
//!
//! Factorizable tables arise from two marginals `(r, s)`: each player
//! observes +1 with probability `r` under their first strategy and `s`
//! under their second, independently of the other player. Correlated,
//! non-factorizable tables add five offsets `(a, b, c, d, e)` on top of
//! that product baseline while preserving normalization, player symmetry,
//! and causality identically in the parameters.
//!
//! Three summary quantities `eps1 = e - c`, `eps2 = a + b + d + e`,
//! `eps3 = a + 2b - c + 2e` capture everything the payoff and equilibrium
//! formulas need to know about the offsets, and the v-triple `(u, v, w)`
//! distills a table (parameterized or not) into the three numbers the
//! closed-form payoff depends on.

use crate::error::{Error, Result};
use crate::table::{
    check_entry, validate_causality, validate_symmetry, JointProbabilityTable, DEFAULT_TOL,
};

/// Marginals of the factorizable baseline, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorParams {
    r: f64,
    s: f64,
}

impl FactorParams {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("s", s)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Correlation offsets added to the factorizable baseline.
///
/// Ranges are table-dependent: any real values are accepted here, and the
/// builders reject combinations that push an entry out of `[0, 1]`. The
/// classical embedding (`r = 1`, `s = 0`) additionally requires all five
/// to be non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NonFactParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl NonFactParams {
    pub const ZERO: Self = Self {
        a: 0.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
        e: 0.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("e", e)] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name: name.to_string(),
                    value: v,
                });
            }
        }
        Ok(Self { a, b, c, d, e })
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    /// The three offset summaries the closed forms depend on.
    pub fn epsilons(&self) -> EpsilonTriple {
        epsilons(self)
    }
}

/// Offset summaries; all zero exactly when the offsets vanish on the
/// non-negative embedding domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonTriple {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

/// Computes `eps1 = e - c`, `eps2 = a + b + d + e`, `eps3 = a + 2b - c + 2e`.
pub fn epsilons(np: &NonFactParams) -> EpsilonTriple {
    EpsilonTriple {
        e1: np.e - np.c,
        e2: np.a + np.b + np.d + np.e,
        e3: np.a + 2.0 * np.b - np.c + 2.0 * np.e,
    }
}

/// The three table differences the closed-form payoff is built from:
/// `u = p1 - p5`, `v = p2 - p14`, `w = p13 - p5`. The payoff formulas use
/// the combinations `v1 = w`, `v2 = u + v`, `v3 = u + w`, exposed as
/// methods so they can never drift out of sync with the stored fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VTriple {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl VTriple {
    pub fn v1(&self) -> f64 {
        self.w
    }

    pub fn v2(&self) -> f64 {
        self.u + self.v
    }

    pub fn v3(&self) -> f64 {
        self.u + self.w
    }
}

/// Builds the product table for marginals `(r, s)`; always valid.
pub fn build_factorizable(fp: &FactorParams) -> JointProbabilityTable {
    build_nonfact_general(fp, &NonFactParams::ZERO)
        .expect("product tables from in-range marginals are always valid")
}

/// Builds the offset table over an arbitrary factorizable baseline.
///
/// Entry layout (quadrants in `p1..p16` order, `eta = a + b + e - c - d`):
///
/// ```text
/// Q11: r^2 - a - 2b,    r(1-r) + b,        r(1-r) + b,        (1-r)^2 + a
/// Q12: rs + e,          r(1-s) - a - b - e, s(1-r) + c + d - e, (1-r)(1-s) + eta
/// Q21: rs + e,          s(1-r) + c + d - e, r(1-s) - a - b - e, (1-r)(1-s) + eta
/// Q22: s^2 + c,         s(1-s) + d,        s(1-s) + d,        (1-s)^2 - c - 2d
/// ```
///
/// Normalization, symmetry, and causality hold identically in the
/// parameters; the only failure mode is an entry leaving `[0, 1]`, reported
/// for the first offender in `p1..p16` order.
pub fn build_nonfact_general(
    fp: &FactorParams,
    np: &NonFactParams,
) -> Result<JointProbabilityTable> {
    let (r, s) = (fp.r(), fp.s());
    let NonFactParams { a, b, c, d, e } = *np;
    let eta = a + b + e - c - d;
    let raw = [
        r * r - a - 2.0 * b,
        r * (1.0 - r) + b,
        r * (1.0 - r) + b,
        (1.0 - r) * (1.0 - r) + a,
        r * s + e,
        r * (1.0 - s) - a - b - e,
        s * (1.0 - r) + c + d - e,
        (1.0 - r) * (1.0 - s) + eta,
        r * s + e,
        s * (1.0 - r) + c + d - e,
        r * (1.0 - s) - a - b - e,
        (1.0 - r) * (1.0 - s) + eta,
        s * s + c,
        s * (1.0 - s) + d,
        s * (1.0 - s) + d,
        (1.0 - s) * (1.0 - s) - c - 2.0 * d,
    ];
    let mut entries = [0.0; 16];
    for (i, v) in raw.into_iter().enumerate() {
        entries[i] = check_entry(i + 1, v)?;
    }
    JointProbabilityTable::from_entries(entries)
}

/// Builds the offset table over the classical baseline `r = 1`, `s = 0`.
///
/// All five offsets must be non-negative here; zero offsets reproduce the
/// deterministic classical table exactly.
pub fn build_embedding(np: &NonFactParams) -> Result<JointProbabilityTable> {
    for (name, v) in [
        ("a", np.a),
        ("b", np.b),
        ("c", np.c),
        ("d", np.d),
        ("e", np.e),
    ] {
        if v < 0.0 {
            return Err(Error::NegativeParameter { name, value: v });
        }
    }
    let fp = FactorParams::new(1.0, 0.0).expect("classical baseline marginals are in range");
    build_nonfact_general(&fp, np)
}

/// Reads the v-triple straight off a table.
///
/// Defined for any table; if the table misses player symmetry or causality
/// by more than [`DEFAULT_TOL`] a warning is logged, since the closed forms
/// downstream assume both.
pub fn vtriple_from_table(table: &JointProbabilityTable) -> VTriple {
    let symmetry = validate_symmetry(table, DEFAULT_TOL);
    if !symmetry.ok {
        log::warn!(
            "v-triple computed from a player-asymmetric table (residual {:.3e})",
            symmetry.residual
        );
    }
    let causality = validate_causality(table, DEFAULT_TOL);
    if !causality.ok {
        log::warn!(
            "v-triple computed from a signaling table (residual {:.3e})",
            causality.residual
        );
    }
    VTriple {
        u: table.p(1) - table.p(5),
        v: table.p(2) - table.p(14),
        w: table.p(13) - table.p(5),
    }
}

/// Closed-form v-triple for given offset summaries over baseline `fp`:
/// `v1 = -s(r-s) - eps1`, `v2 = (1-s)(r-s) - eps2`, `v3 = (r-s)^2 - eps3`.
pub fn vtriple_from_eps(fp: &FactorParams, eps: &EpsilonTriple) -> VTriple {
    let (r, s) = (fp.r(), fp.s());
    let v1 = -s * (r - s) - eps.e1;
    let v2 = (1.0 - s) * (r - s) - eps.e2;
    let v3 = (r - s) * (r - s) - eps.e3;
    VTriple {
        u: v3 - v1,
        v: v2 - (v3 - v1),
        w: v1,
    }
}

/// Closed-form v-triple for offset parameters over baseline `fp`; agrees
/// with [`vtriple_from_table`] of the built table to rounding error.
pub fn vtriple_closed_form(fp: &FactorParams, np: &NonFactParams) -> VTriple {
    vtriple_from_eps(fp, &epsilons(np))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{validate, validate_normalization};

    fn grid(step: f64) -> Vec<f64> {
        let n = (1.0 / step).round() as usize;
        (0..=n).map(|k| k as f64 * step).collect()
    }

    /// Valid embedding offset combinations on a 0.25 grid.
    pub(crate) fn embedding_grid() -> Vec<NonFactParams> {
        let vals = grid(0.25);
        let mut out = Vec::new();
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    for &d in &vals {
                        for &e in &vals {
                            let np = NonFactParams { a, b, c, d, e };
                            if build_embedding(&np).is_ok() {
                                out.push(np);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn zero_offsets_reproduce_the_classical_table_exactly() {
        let t = build_embedding(&NonFactParams::ZERO).unwrap();
        let mut want = [0.0; 16];
        want[0] = 1.0;
        want[5] = 1.0;
        want[10] = 1.0;
        want[15] = 1.0;
        assert_eq!(t.entries(), &want);
    }

    #[test]
    fn factorizable_builder_matches_outer_products() {
        let fp = FactorParams::new(0.7, 0.2).unwrap();
        let t = build_factorizable(&fp);
        assert!((t.p(1) - 0.49).abs() < 1e-15);
        assert!((t.p(5) - 0.14).abs() < 1e-15);
        assert!((t.p(13) - 0.04).abs() < 1e-15);
        let report = validate(&t, DEFAULT_TOL);
        assert!(report.all_ok());
        let f = report.factorization.expect("must factorize");
        assert!((f.r - 0.7).abs() < 1e-12 && (f.s - 0.2).abs() < 1e-12);
    }

    #[test]
    fn general_builder_rejects_out_of_range_entries() {
        // On the (r, s) = (0, 0) baseline, a positive `a` forces p1 < 0.
        let fp = FactorParams::new(0.0, 0.0).unwrap();
        let err = build_nonfact_general(&fp, &NonFactParams::new(0.1, 0.0, 0.0, 0.0, 0.0).unwrap())
            .unwrap_err();
        match err {
            Error::InvalidProbability { name, .. } => assert_eq!(name, "p1"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn embedding_rejects_negative_offsets() {
        let err =
            build_embedding(&NonFactParams::new(0.0, -0.1, 0.0, 0.0, 0.0).unwrap()).unwrap_err();
        match err {
            Error::NegativeParameter { name, .. } => assert_eq!(name, "b"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn embedding_example_quadrants() {
        let np = NonFactParams::new(0.5, 0.0, 0.0, 0.5, 0.5).unwrap();
        let t = build_embedding(&np).unwrap();
        assert_eq!(t.quadrant(0, 0), [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(t.quadrant(0, 1), [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(t.quadrant(1, 0), [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(t.quadrant(1, 1), [0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn epsilon_examples() {
        let eps = epsilons(&NonFactParams::new(0.0, 0.5, 0.0, 0.5, 0.2).unwrap());
        assert!((eps.e1 - 0.2).abs() < 1e-15);
        assert!((eps.e2 - 1.2).abs() < 1e-15);
        assert!((eps.e3 - 1.4).abs() < 1e-15);
        assert_eq!(
            epsilons(&NonFactParams::ZERO),
            EpsilonTriple {
                e1: 0.0,
                e2: 0.0,
                e3: 0.0
            }
        );
    }

    #[test]
    fn maximal_offsets_satisfy_the_two_identities() {
        // a = d = e = (2 + sqrt 2)/8, b = c = 1/2 - (2 + sqrt 2)/8.
        let q = (2.0 + std::f64::consts::SQRT_2) / 8.0;
        let np = NonFactParams::new(q, 0.5 - q, 0.5 - q, q, q).unwrap();
        let eps = np.epsilons();
        assert!((1.0 - eps.e3 + eps.e1).abs() < 1e-12);
        assert!((1.0 + eps.e1 - eps.e2).abs() < 1e-12);
        let t = build_embedding(&np).unwrap();
        assert!(validate(&t, DEFAULT_TOL).all_ok());
        let vt = vtriple_from_table(&t);
        let s = std::f64::consts::SQRT_2 / 4.0;
        for got in [vt.v1(), vt.v2(), vt.v3()] {
            assert!((got + s).abs() < 1e-12, "expected -sqrt(2)/4, got {got}");
        }
    }

    #[test]
    fn vtriple_closed_form_example() {
        let fp = FactorParams::new(0.7, 0.2).unwrap();
        let vt = vtriple_closed_form(&fp, &NonFactParams::ZERO);
        assert!((vt.v1() + 0.1).abs() < 1e-12);
        assert!((vt.v2() - 0.4).abs() < 1e-12);
        assert!((vt.v3() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn vtriple_from_classical_table() {
        let t = build_embedding(&NonFactParams::ZERO).unwrap();
        let vt = vtriple_from_table(&t);
        assert_eq!((vt.u, vt.v, vt.w), (1.0, 0.0, 0.0));
        assert_eq!((vt.v1(), vt.v2(), vt.v3()), (0.0, 1.0, 1.0));
    }

    #[test]
    fn closed_form_matches_table_on_rs_grid() {
        // Offsets small enough to stay valid near the diagonal.
        let np = NonFactParams::new(0.01, -0.005, 0.01, 0.005, -0.01).unwrap();
        for &r in &grid(0.05) {
            for &s in &grid(0.05) {
                let fp = FactorParams::new(r, s).unwrap();
                let Ok(t) = build_nonfact_general(&fp, &np) else {
                    continue;
                };
                let from_table = vtriple_from_table(&t);
                let closed = vtriple_closed_form(&fp, &np);
                assert!((from_table.u - closed.u).abs() <= 1e-12);
                assert!((from_table.v - closed.v).abs() <= 1e-12);
                assert!((from_table.w - closed.w).abs() <= 1e-12);
                assert!((from_table.v1() - closed.v1()).abs() <= 1e-12);
                assert!((from_table.v2() - closed.v2()).abs() <= 1e-12);
                assert!((from_table.v3() - closed.v3()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_matches_table_on_embedding_grid() {
        let fp = FactorParams::new(1.0, 0.0).unwrap();
        let mut checked = 0usize;
        for np in embedding_grid() {
            let t = build_embedding(&np).unwrap();
            let from_table = vtriple_from_table(&t);
            let closed = vtriple_closed_form(&fp, &np);
            for (got, want) in [
                (from_table.v1(), closed.v1()),
                (from_table.v2(), closed.v2()),
                (from_table.v3(), closed.v3()),
            ] {
                assert!((got - want).abs() <= 1e-12, "np = {np:?}");
            }
            checked += 1;
        }
        assert!(checked > 100, "grid unexpectedly sparse: {checked}");
    }

    #[test]
    fn embedding_grid_tables_are_fully_valid() {
        for np in embedding_grid() {
            let t = build_embedding(&np).unwrap();
            let report = validate(&t, 1e-12);
            assert!(report.all_ok(), "np = {np:?}: {report:?}");
        }
    }

    #[test]
    fn zero_epsilons_imply_zero_offsets_on_the_embedding_domain() {
        for np in embedding_grid() {
            let eps = np.epsilons();
            if eps.e1.abs() <= 1e-12 && eps.e2.abs() <= 1e-12 && eps.e3.abs() <= 1e-12 {
                for v in np.as_array() {
                    assert!(v.abs() <= 1e-12, "np = {np:?}");
                }
            }
        }
    }

    #[test]
    fn general_builder_accepts_negative_offsets_where_valid() {
        // Negative offsets are fine on an interior baseline.
        let fp = FactorParams::new(0.5, 0.5).unwrap();
        let np = NonFactParams::new(-0.1, 0.02, -0.05, 0.01, 0.03).unwrap();
        let t = build_nonfact_general(&fp, &np).unwrap();
        assert!(validate_normalization(&t, 1e-12).ok);
    }
}
