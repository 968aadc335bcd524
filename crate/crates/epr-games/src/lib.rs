//! Symmetric two-player games driven by joint probability tables.
//!
//! A game here is a 2x2 payoff matrix together with a 4x4 table of joint
//! outcome probabilities, one quadrant per pure-strategy pair. The table
//! may factorize into independent per-player marginals or carry genuine
//! correlations; correlated tables are built from a classical baseline
//! plus five offset parameters and are classified against the local and
//! quantum correlation bounds.
//!
//! The crate computes exact mixed-strategy payoffs in closed form,
//! enumerates Nash equilibria of the symmetric game, evaluates the CHSH
//! correlation sum, and simulates the round-by-round referee protocol
//! that realizes a table empirically.
//!
//! ```
//! use epr_games::{build_embedding, chsh_delta, find_equilibria, vtriple_from_table};
//! use epr_games::{GamePreset, NonFactParams};
//!
//! // Maximally correlated offsets: cooperation becomes an equilibrium.
//! let q = (2.0 + std::f64::consts::SQRT_2) / 8.0;
//! let np = NonFactParams { a: q, b: 0.5 - q, c: 0.5 - q, d: q, e: q };
//! let table = build_embedding(&np)?;
//! assert!((chsh_delta(&table) - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
//!
//! let m = GamePreset::PrisonersDilemma.matrix();
//! let vt = vtriple_from_table(&table);
//! let set = find_equilibria(&m, &vt, table.p(13), table.p(14), 1e-9);
//! assert!(set.points.iter().any(|ne| ne.x == 1.0 && ne.y == 1.0));
//! # Ok::<(), epr_games::Error>(())
//! ```

pub mod chsh;
pub mod equilibrium;
pub mod error;
pub mod io;
pub mod params;
pub mod presets;
pub mod reproduce;
pub mod scan;
pub mod sim;
pub mod table;

pub use chsh::{
    chsh_delta, chsh_delta_embedding, chsh_delta_max_abs, cirelson_ok, classify, evaluate,
    ChshResult, Classification, DomainClass, LOCAL_BOUND, QUANTUM_BOUND,
};
pub use equilibrium::{
    classify_game, embedded_mixed_ne, factorizable_equilibria, find_equilibria,
    payoff_closed_embedding, payoff_closed_general, payoff_direct, response_bracket,
    sh_classical_s, EquilibriumSet, GameClass, NashEquilibrium, NeKind,
};
pub use error::{Error, Result};
pub use params::{
    build_embedding, build_factorizable, build_nonfact_general, epsilons, vtriple_closed_form,
    vtriple_from_eps, vtriple_from_table, EpsilonTriple, FactorParams, NonFactParams, VTriple,
};
pub use presets::GamePreset;
pub use sim::{simulate, SimConfig, SimResult};
pub use table::{
    factorize, quadrant_payoffs, validate, validate_causality, validate_normalization,
    validate_symmetry, ConstraintCheck, DeltaTriple, Factorization, JointProbabilityTable,
    PayoffMatrix, StrategyProfile, ValidationReport, DEFAULT_TOL,
};
