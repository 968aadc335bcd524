//! Canonical payoff matrices for the three case-study games.

use crate::table::PayoffMatrix;

/// The bundled 2x2 games, in the payoff convention
/// `(a1, a2, a3, a4)` = payoffs at outcomes `(+1,+1), (+1,-1), (-1,+1), (-1,-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GamePreset {
    /// `(3, 0, 5, 1)`: defection dominates, mutual defection is the unique
    /// classical equilibrium.
    PrisonersDilemma,
    /// `(4, 1, 3, 3)`: two pure coordination equilibria plus a mixed one.
    StagHunt,
    /// `(3, 1, 4, 0)`: anti-coordination; swerving against a dare.
    Chicken,
}

impl GamePreset {
    pub const ALL: [GamePreset; 3] = [
        GamePreset::PrisonersDilemma,
        GamePreset::StagHunt,
        GamePreset::Chicken,
    ];

    /// Short CLI name.
    pub fn name(&self) -> &'static str {
        match self {
            GamePreset::PrisonersDilemma => "pd",
            GamePreset::StagHunt => "sh",
            GamePreset::Chicken => "chicken",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == name)
    }

    pub fn matrix(&self) -> PayoffMatrix {
        let (a1, a2, a3, a4) = match self {
            GamePreset::PrisonersDilemma => (3.0, 0.0, 5.0, 1.0),
            GamePreset::StagHunt => (4.0, 1.0, 3.0, 3.0),
            GamePreset::Chicken => (3.0, 1.0, 4.0, 0.0),
        };
        PayoffMatrix::new(a1, a2, a3, a4).expect("preset payoffs are finite")
    }
}
