//! Randomized cross-checks between independent formulations: closed forms
//! against direct table evaluation, reported equilibria against a
//! brute-force deviation search, and the correlation sum against its
//! algebraic range.

use proptest::prelude::*;

use epr_games::{
    build_embedding, build_factorizable, chsh_delta, chsh_delta_embedding, cirelson_ok,
    embedded_mixed_ne, factorize, find_equilibria, payoff_closed_embedding, payoff_closed_general,
    payoff_direct, response_bracket, vtriple_from_table, FactorParams, GamePreset,
    JointProbabilityTable, NonFactParams, StrategyProfile, QUANTUM_BOUND,
};

const TOL: f64 = 1e-12;

/// Uniform offsets filtered to the valid region of the classical
/// embedding. `b` and `d` are capped at 1/2 (necessary for validity) to
/// keep the rejection rate low.
fn valid_embedding() -> impl Strategy<Value = (NonFactParams, JointProbabilityTable)> {
    (
        0.0..=1.0f64,
        0.0..=0.5f64,
        0.0..=1.0f64,
        0.0..=0.5f64,
        0.0..=1.0f64,
    )
        .prop_map(|(a, b, c, d, e)| NonFactParams { a, b, c, d, e })
        .prop_filter_map("offsets must yield a valid table", |np| {
            build_embedding(&np).ok().map(|t| (np, t))
        })
}

fn presets() -> impl Strategy<Value = GamePreset> {
    prop_oneof![
        Just(GamePreset::PrisonersDilemma),
        Just(GamePreset::StagHunt),
        Just(GamePreset::Chicken),
    ]
}

proptest! {
    #[test]
    fn closed_forms_match_direct_evaluation(
        (np, table) in valid_embedding(),
        preset in presets(),
        x in 0.0..=1.0f64,
        y in 0.0..=1.0f64,
    ) {
        let m = preset.matrix();
        let profile = StrategyProfile::new(x, y).unwrap();
        let vt = vtriple_from_table(&table);
        let (da, db) = payoff_direct(&table, &m, &profile);
        let (ea, eb) = payoff_closed_embedding(&m, &np, &profile);
        let (ga, gb) = payoff_closed_general(&m, &vt, table.p(13), table.p(14), &profile);
        prop_assert!((da - ea).abs() <= TOL, "embedding form: {da} vs {ea}");
        prop_assert!((db - eb).abs() <= TOL, "embedding form: {db} vs {eb}");
        prop_assert!((da - ga).abs() <= TOL, "general form: {da} vs {ga}");
        prop_assert!((db - gb).abs() <= TOL, "general form: {db} vs {gb}");
    }

    #[test]
    fn symmetric_tables_swap_payoffs_with_the_profile(
        (_, table) in valid_embedding(),
        preset in presets(),
        x in 0.0..=1.0f64,
        y in 0.0..=1.0f64,
    ) {
        let m = preset.matrix();
        let fwd = payoff_direct(&table, &m, &StrategyProfile::new(x, y).unwrap());
        let rev = payoff_direct(&table, &m, &StrategyProfile::new(y, x).unwrap());
        prop_assert!((fwd.0 - rev.1).abs() <= TOL, "{} vs {}", fwd.0, rev.1);
        prop_assert!((fwd.1 - rev.0).abs() <= TOL, "{} vs {}", fwd.1, rev.0);
    }

    #[test]
    fn product_tables_roundtrip_their_marginals(r in 0.0..=1.0f64, s in 0.0..=1.0f64) {
        let fp = FactorParams::new(r, s).unwrap();
        let table = build_factorizable(&fp);
        let f = factorize(&table, 1e-9).expect("product tables factorize");
        prop_assert!((f.r - r).abs() <= 1e-9);
        prop_assert!((f.s - s).abs() <= 1e-9);
        prop_assert!((f.r_prime - r).abs() <= 1e-9);
        prop_assert!((f.s_prime - s).abs() <= 1e-9);
    }

    #[test]
    fn reported_equilibria_resist_deviations(
        (_, table) in valid_embedding(),
        preset in presets(),
    ) {
        let m = preset.matrix();
        let vt = vtriple_from_table(&table);
        let set = find_equilibria(&m, &vt, table.p(13), table.p(14), 1e-9);
        let candidates: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        for ne in &set.points {
            let base = payoff_direct(&table, &m, &StrategyProfile::new(ne.x, ne.y).unwrap());
            for &dev in &candidates {
                let a_dev = payoff_direct(&table, &m, &StrategyProfile::new(dev, ne.y).unwrap());
                prop_assert!(
                    a_dev.0 <= base.0 + 1e-7,
                    "row deviation to {dev} gains {} at ({}, {})",
                    a_dev.0 - base.0, ne.x, ne.y
                );
                let b_dev = payoff_direct(&table, &m, &StrategyProfile::new(ne.x, dev).unwrap());
                prop_assert!(
                    b_dev.1 <= base.1 + 1e-7,
                    "column deviation to {dev} gains {} at ({}, {})",
                    b_dev.1 - base.1, ne.x, ne.y
                );
            }
        }
    }

    #[test]
    fn interior_root_agrees_across_representations(
        (np, table) in valid_embedding(),
        preset in presets(),
    ) {
        let m = preset.matrix();
        let vt = vtriple_from_table(&table);
        let d = m.deltas();
        let slope = d.d3 * vt.v3();
        prop_assume!(slope.abs() > 1e-9);
        if let Ok(Some(root)) = embedded_mixed_ne(&m, &np.epsilons()) {
            // The offset-summary root must kill the v-triple bracket.
            prop_assert!(
                response_bracket(&m, &vt, root).abs() <= 1e-9,
                "bracket at root {root}: {}",
                response_bracket(&m, &vt, root)
            );
            if root > 1e-6 && root < 1.0 - 1e-6 {
                let set = find_equilibria(&m, &vt, table.p(13), table.p(14), 1e-9);
                prop_assert!(
                    set.points.iter().any(|p| (p.x - root).abs() <= 1e-9 && p.x == p.y),
                    "interior point {root} missing from {:?}",
                    set.points.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn correlation_sum_stays_in_the_algebraic_range((np, table) in valid_embedding()) {
        let closed = chsh_delta_embedding(&np);
        let from_table = chsh_delta(&table);
        prop_assert!((closed - from_table).abs() <= TOL, "{closed} vs {from_table}");
        prop_assert!((-4.0 - TOL..=4.0 + TOL).contains(&from_table), "{from_table}");
        // The bound check and the closed sum agree bitwise: 4x is exact.
        prop_assert_eq!(cirelson_ok(&np, 0.0), closed.abs() <= QUANTUM_BOUND);
    }
}
