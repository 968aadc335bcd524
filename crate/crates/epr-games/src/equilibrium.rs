//! Payoff evaluation and Nash equilibrium enumeration.
//!
//! For a symmetric table the row player's expected payoff at a mixed
//! profile `(x, y)` expands to
//!
//! ```text
//! P_A(x, y) = x*y*d3*v3 + x*(d1*v1 - d2*v2)
//!           + y*((a2 - a1)*v1 + (a3 - a4)*v2)
//!           + a1*p13 + (a2 + a3)*p14 + a4*(1 - p13 - 2*p14)
//! ```
//!
//! and the column player's is the same with `x` and `y` swapped. A profile
//! `(x*, y*)` is a Nash equilibrium iff
//!
//! ```text
//! (x* - x) * B(y*) >= 0  and  (y* - y) * B(x*) >= 0   for all x, y in [0, 1]
//! ```
//!
//! where `B(t) = t*d3*v3 + d1*v1 - d2*v2` is the response bracket. Since
//! `B` is affine in `t`, checking the two corners and the root of `B`
//! enumerates every equilibrium; the degenerate case `B == 0` makes every
//! profile an equilibrium and is reported via a continuum flag instead of
//! an infinite list.

use crate::error::{Error, Result};
use crate::params::{vtriple_closed_form, EpsilonTriple, FactorParams, NonFactParams, VTriple};
use crate::table::{JointProbabilityTable, PayoffMatrix, StrategyProfile};

/// Canonical 2x2 game families, keyed on the payoff-difference signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GameClass {
    /// `d1 > 0` and `d2 > 0`. Records whether `|d3| <= d2`, which bounds
    /// how far the coordination term can push against the dominant corner.
    PrisonersDilemma { d3_within_d2: bool },
    /// `d3 > d2 > 0`, `d1 + d2 > 0`, `d3 > d1 + d2`.
    StagHunt,
    /// `d3 < 0`, `d2 < 0`, `d1 > 0`; carries `alpha = -d2`, `beta = d1`.
    Chicken { alpha: f64, beta: f64 },
    Other,
}

impl std::fmt::Display for GameClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GameClass::PrisonersDilemma { d3_within_d2 } => {
                write!(f, "PrisonersDilemma (d1 > 0, d2 > 0")?;
                if *d3_within_d2 {
                    write!(f, ", |d3| <= d2")?;
                }
                write!(f, ")")
            }
            GameClass::StagHunt => write!(f, "StagHunt (d3 > d2 > 0, d3 > d1 + d2 > 0)"),
            GameClass::Chicken { alpha, beta } => {
                write!(f, "Chicken (d2 < 0, d1 > 0; alpha = {alpha}, beta = {beta})")
            }
            GameClass::Other => write!(f, "Other"),
        }
    }
}

/// Classifies a payoff matrix by the signs of its payoff differences.
pub fn classify_game(m: &PayoffMatrix) -> GameClass {
    let d = m.deltas();
    if d.d1 > 0.0 && d.d2 > 0.0 {
        GameClass::PrisonersDilemma {
            d3_within_d2: d.d3.abs() <= d.d2,
        }
    } else if d.d3 > d.d2 && d.d2 > 0.0 && d.d1 + d.d2 > 0.0 && d.d3 > d.d1 + d.d2 {
        GameClass::StagHunt
    } else if d.d3 < 0.0 && d.d2 < 0.0 && d.d1 > 0.0 {
        GameClass::Chicken {
            alpha: -d.d2,
            beta: d.d1,
        }
    } else {
        GameClass::Other
    }
}

/// Whether an equilibrium resists every unilateral deviation strictly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeKind {
    Strict,
    Weak,
}

impl std::fmt::Display for NeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NeKind::Strict => write!(f, "strict"),
            NeKind::Weak => write!(f, "weak"),
        }
    }
}

/// One Nash equilibrium with its expected payoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NashEquilibrium {
    pub x: f64,
    pub y: f64,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub kind: NeKind,
}

/// All equilibria of a game, sorted by `(x, y)`.
///
/// When the response bracket vanishes identically every profile is an
/// equilibrium; `continuum` then carries a description and `points` lists
/// the four pure corners as representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSet {
    pub points: Vec<NashEquilibrium>,
    pub continuum: Option<String>,
}

impl EquilibriumSet {
    pub fn is_continuum(&self) -> bool {
        self.continuum.is_some()
    }
}

/// Expected payoff pair at `profile`, evaluated directly from the table:
/// the bilinear mix of the four pure-strategy-pair payoffs. This is the
/// ground-truth oracle the closed forms are tested against.
pub fn payoff_direct(
    table: &JointProbabilityTable,
    m: &PayoffMatrix,
    profile: &StrategyProfile,
) -> (f64, f64) {
    let qp = crate::table::quadrant_payoffs(table, m);
    let (x, y) = (profile.x(), profile.y());
    let weights = [
        (0, 0, x * y),
        (0, 1, x * (1.0 - y)),
        (1, 0, (1.0 - x) * y),
        (1, 1, (1.0 - x) * (1.0 - y)),
    ];
    let mut pa = 0.0;
    let mut pb = 0.0;
    for (i, j, wt) in weights {
        pa += wt * qp[i][j].0;
        pb += wt * qp[i][j].1;
    }
    (pa, pb)
}

/// Expected payoff pair from the closed-form expansion; needs only the
/// v-triple and the two table entries `p13`, `p14` entering the constant
/// term. Agrees with [`payoff_direct`] to rounding error on symmetric
/// causal tables.
pub fn payoff_closed_general(
    m: &PayoffMatrix,
    vt: &VTriple,
    p13: f64,
    p14: f64,
    profile: &StrategyProfile,
) -> (f64, f64) {
    let d = m.deltas();
    let konst = m.a1 * p13 + (m.a2 + m.a3) * p14 + m.a4 * (1.0 - p13 - 2.0 * p14);
    let x_coef = d.d1 * vt.v1() - d.d2 * vt.v2();
    let y_coef = (m.a2 - m.a1) * vt.v1() + (m.a3 - m.a4) * vt.v2();
    let eval = |x: f64, y: f64| x * y * d.d3 * vt.v3() + x * x_coef + y * y_coef + konst;
    let (x, y) = (profile.x(), profile.y());
    (eval(x, y), eval(y, x))
}

/// Expected payoff pair on the classical embedding, written directly in the
/// offset summaries:
///
/// ```text
/// P_A = a4 + c*(a1 - a4) - d*(2a4 - a2 - a3)
///     + x*y*d3*(1 - eps3)
///     + x*[(a2 - a4)*(1 - eps2) + eps1*(a1 - a3)]
///     + y*[(a3 - a4)*(1 - eps2) + eps1*(a1 - a2)]
/// ```
pub fn payoff_closed_embedding(
    m: &PayoffMatrix,
    np: &NonFactParams,
    profile: &StrategyProfile,
) -> (f64, f64) {
    let d = m.deltas();
    let eps = np.epsilons();
    let konst = m.a4 + np.c * (m.a1 - m.a4) - np.d * (2.0 * m.a4 - m.a2 - m.a3);
    let x_coef = (m.a2 - m.a4) * (1.0 - eps.e2) + eps.e1 * (m.a1 - m.a3);
    let y_coef = (m.a3 - m.a4) * (1.0 - eps.e2) + eps.e1 * (m.a1 - m.a2);
    let eval = |x: f64, y: f64| x * y * d.d3 * (1.0 - eps.e3) + x * x_coef + y * y_coef + konst;
    let (x, y) = (profile.x(), profile.y());
    (eval(x, y), eval(y, x))
}

/// The response bracket `B(t) = t*d3*v3 + d1*v1 - d2*v2`. Its sign at the
/// opponent's mixture decides which way a player wants to move.
pub fn response_bracket(m: &PayoffMatrix, vt: &VTriple, t: f64) -> f64 {
    let d = m.deltas();
    t * d.d3 * vt.v3() + d.d1 * vt.v1() - d.d2 * vt.v2()
}

/// Enumerates all Nash equilibria of the symmetric game described by the
/// payoff matrix and v-triple; `p13` and `p14` feed the payoff constant.
///
/// The bracket is affine, so the full catalogue is: each corner whose
/// bracket signs are favorable, the symmetric interior root of the
/// bracket, and, when the bracket vanishes identically within `tol`, a
/// continuum (reported via flag, with the corners as representatives).
/// Interior roots within `tol` of 0 or 1 are absorbed into the corner.
pub fn find_equilibria(
    m: &PayoffMatrix,
    vt: &VTriple,
    p13: f64,
    p14: f64,
    tol: f64,
) -> EquilibriumSet {
    let d = m.deltas();
    let slope = d.d3 * vt.v3();
    let icept = d.d1 * vt.v1() - d.d2 * vt.v2();
    let b0 = icept;
    let b1 = slope + icept;

    let attach = |x: f64, y: f64, kind: NeKind| {
        let profile = StrategyProfile::new(x, y).expect("equilibrium coordinates are in range");
        let (payoff_a, payoff_b) = payoff_closed_general(m, vt, p13, p14, &profile);
        NashEquilibrium {
            x,
            y,
            payoff_a,
            payoff_b,
            kind,
        }
    };

    if slope.abs() <= tol && icept.abs() <= tol {
        let points = vec![
            attach(0.0, 0.0, NeKind::Weak),
            attach(0.0, 1.0, NeKind::Weak),
            attach(1.0, 0.0, NeKind::Weak),
            attach(1.0, 1.0, NeKind::Weak),
        ];
        return EquilibriumSet {
            points,
            continuum: Some(
                "response bracket vanishes identically: every profile is an equilibrium \
                 (corners listed as representatives)"
                    .to_string(),
            ),
        };
    }

    let mut points = Vec::new();
    if b0 <= tol {
        let kind = if b0 < -tol { NeKind::Strict } else { NeKind::Weak };
        points.push(attach(0.0, 0.0, kind));
    }
    if b1 >= -tol {
        let kind = if b1 > tol { NeKind::Strict } else { NeKind::Weak };
        points.push(attach(1.0, 1.0, kind));
    }
    if b0 >= -tol && b1 <= tol {
        let kind = if b0 > tol && b1 < -tol {
            NeKind::Strict
        } else {
            NeKind::Weak
        };
        points.push(attach(1.0, 0.0, kind));
        points.push(attach(0.0, 1.0, kind));
    }
    if slope.abs() > tol {
        let root = -icept / slope;
        // Roots within tol of a corner are already covered by the corner
        // (its bracket value is within tol of zero there).
        if root > tol && root < 1.0 - tol {
            points.push(attach(root, root, NeKind::Weak));
        }
    }
    points.sort_by(|p, q| {
        (p.x, p.y)
            .partial_cmp(&(q.x, q.y))
            .expect("equilibrium coordinates are finite")
    });
    EquilibriumSet {
        points,
        continuum: None,
    }
}

/// Equilibria of the purely factorizable game with marginals `fp`.
pub fn factorizable_equilibria(m: &PayoffMatrix, fp: &FactorParams, tol: f64) -> EquilibriumSet {
    let vt = vtriple_closed_form(fp, &NonFactParams::ZERO);
    let s = fp.s();
    find_equilibria(m, &vt, s * s, s * (1.0 - s), tol)
}

/// The second marginal that places the factorizable mixed equilibrium of a
/// stag hunt (or chicken) at the classical mixture: `s = (1 - r)/(d3/d2 - 1)`.
///
/// Requires the matrix to classify as stag hunt or chicken and
/// `r >= d2/d3`; below that bound no in-range `s` exists.
pub fn sh_classical_s(m: &PayoffMatrix, r: f64) -> Result<f64> {
    let class = classify_game(m);
    if !matches!(class, GameClass::StagHunt | GameClass::Chicken { .. }) {
        return Err(Error::WrongGameClass {
            expected: "stag-hunt or chicken",
            found: class.to_string(),
        });
    }
    let d = m.deltas();
    if d.d3 == d.d2 {
        return Err(Error::Degenerate("d3 = d2 in s = (1 - r)/(d3/d2 - 1)".into()));
    }
    let bound = d.d2 / d.d3;
    if r < bound {
        return Err(Error::Precondition(format!(
            "r = {r} is below the mixed-equilibrium bound d2/d3 = {bound}"
        )));
    }
    Ok((1.0 - r) / (d.d3 / d.d2 - 1.0))
}

/// The symmetric interior equilibrium candidate of the classical embedding,
/// the root of `B(y) = d3*(y*(1 - eps3) + eps1) - d2*(1 + eps1 - eps2)`:
///
/// ```text
/// y* = (d2*(1 + eps1 - eps2)/d3 - eps1) / (1 - eps3)
/// ```
///
/// Returns `None` when the root falls outside `[0, 1]`; reduces to `d2/d3`
/// at zero offsets.
pub fn embedded_mixed_ne(m: &PayoffMatrix, eps: &EpsilonTriple) -> Result<Option<f64>> {
    let d = m.deltas();
    if d.d3 == 0.0 {
        return Err(Error::Degenerate("d3 = 0 in the mixed-equilibrium root".into()));
    }
    let denom = 1.0 - eps.e3;
    if denom == 0.0 {
        return Err(Error::Degenerate(
            "1 - eps3 = 0 in the mixed-equilibrium root".into(),
        ));
    }
    let y = (d.d2 * (1.0 + eps.e1 - eps.e2) / d.d3 - eps.e1) / denom;
    Ok((0.0..=1.0).contains(&y).then_some(y))
}
