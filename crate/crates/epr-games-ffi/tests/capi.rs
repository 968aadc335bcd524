//! Drives the C surface exactly as a foreign caller would: through raw
//! pointers, status codes, and the generated header.

use std::f64::consts::SQRT_2;
use std::ffi::CStr;
use std::fs;
use std::process::Command;
use std::ptr;

use epr_games_ffi::{
    epr_chsh_delta, epr_chsh_delta_embedding, epr_cirelson_ok, epr_epsilons, epr_equilibria,
    epr_equilibria_count, epr_equilibria_free, epr_equilibria_get, epr_equilibria_is_continuum,
    epr_payoff_direct, epr_simulate, epr_status_name, epr_table_classify, epr_table_embedding,
    epr_table_entries, epr_table_factorizable, epr_table_factorize, epr_table_free,
    epr_table_from_entries, epr_table_validate, epr_version, EprClassification, EprDomain,
    EprNash, EprSimSummary, EprStatus, EprTable, EprValidation,
};

const PD: (f64, f64, f64, f64) = (3.0, 0.0, 5.0, 1.0);

fn maximal_q() -> f64 {
    (2.0 + SQRT_2) / 8.0
}

fn build_maximal() -> *mut EprTable {
    let q = maximal_q();
    let mut table = ptr::null_mut();
    let status = unsafe { epr_table_embedding(q, 0.5 - q, 0.5 - q, q, q, &mut table) };
    assert_eq!(status, EprStatus::Ok);
    assert!(!table.is_null());
    table
}

fn build_classical() -> *mut EprTable {
    let mut table = ptr::null_mut();
    let status = unsafe { epr_table_embedding(0.0, 0.0, 0.0, 0.0, 0.0, &mut table) };
    assert_eq!(status, EprStatus::Ok);
    table
}

#[test]
fn version_and_status_names_are_static_strings() {
    let version = unsafe { CStr::from_ptr(epr_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let name = unsafe { CStr::from_ptr(epr_status_name(EprStatus::Ok)) };
    assert_eq!(name.to_str().unwrap(), "ok");
    let name = unsafe { CStr::from_ptr(epr_status_name(EprStatus::InvalidProbability)) };
    assert_eq!(name.to_str().unwrap(), "invalid probability");
}

#[test]
fn embedding_roundtrip_validation_and_classification() {
    let table = build_maximal();

    let mut entries = [0.0; 16];
    assert_eq!(
        unsafe { epr_table_entries(table, entries.as_mut_ptr()) },
        EprStatus::Ok
    );
    let sum: f64 = entries.iter().sum();
    assert!((sum - 4.0).abs() <= 1e-12, "entries sum to {sum}");

    let mut validation = EprValidation {
        ok: false,
        normalization_residual: -1.0,
        symmetry_residual: -1.0,
        causality_residual: -1.0,
        factorizable: true,
        r: 0.0,
        s: 0.0,
        r_prime: 0.0,
        s_prime: 0.0,
    };
    assert_eq!(
        unsafe { epr_table_validate(table, 1e-12, &mut validation) },
        EprStatus::Ok
    );
    assert!(validation.ok);
    assert!(validation.normalization_residual <= 1e-12);
    assert!(!validation.factorizable);

    let mut cls = EprClassification {
        domain: EprDomain::Factorizable,
        boundary: false,
        delta: 0.0,
    };
    assert_eq!(
        unsafe { epr_table_classify(table, 1e-9, &mut cls) },
        EprStatus::Ok
    );
    assert_eq!(cls.domain, EprDomain::Quantum);
    assert!(cls.boundary);
    assert!((cls.delta - 2.0 * SQRT_2).abs() <= 1e-12);

    let mut delta = 0.0;
    assert_eq!(unsafe { epr_chsh_delta(table, &mut delta) }, EprStatus::Ok);
    assert_eq!(delta, cls.delta);

    unsafe { epr_table_free(table) };
}

#[test]
fn closed_form_helpers_match_reference_points() {
    assert_eq!(epr_chsh_delta_embedding(0.5, 0.0, 0.0, 0.5, 0.5), 4.0);
    assert_eq!(epr_chsh_delta_embedding(0.0, 0.0, 0.0, 0.0, 0.0), -2.0);
    assert!(!epr_cirelson_ok(0.5, 0.0, 0.0, 0.5, 0.5, 1e-9));
    let q = maximal_q();
    assert!(epr_cirelson_ok(q, 0.5 - q, 0.5 - q, q, q, 1e-9));

    let mut eps = [0.0; 3];
    assert_eq!(
        unsafe { epr_epsilons(0.0, 0.5, 0.0, 0.5, 0.2, eps.as_mut_ptr()) },
        EprStatus::Ok
    );
    assert!((eps[0] - 0.2).abs() <= 1e-12);
    assert!((eps[1] - 1.2).abs() <= 1e-12);
    assert!((eps[2] - 1.4).abs() <= 1e-12);
}

#[test]
fn invalid_inputs_surface_as_status_codes() {
    let mut table = ptr::null_mut();
    // p1 = 1 - a - 2b goes negative.
    assert_eq!(
        unsafe { epr_table_embedding(0.9, 0.9, 0.0, 0.0, 0.0, &mut table) },
        EprStatus::InvalidProbability
    );
    // Negative offsets are rejected on the embedding.
    assert_eq!(
        unsafe { epr_table_embedding(-0.1, 0.0, 0.0, 0.0, 0.0, &mut table) },
        EprStatus::InvalidProbability
    );
    let mut raw = [0.0; 16];
    raw[0] = f64::NAN;
    assert_eq!(
        unsafe { epr_table_from_entries(raw.as_mut_ptr(), &mut table) },
        EprStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { epr_table_from_entries(ptr::null(), &mut table) },
        EprStatus::NullPointer
    );
    assert_eq!(
        unsafe { epr_table_embedding(0.0, 0.0, 0.0, 0.0, 0.0, ptr::null_mut()) },
        EprStatus::NullPointer
    );

    let live = build_classical();
    let (a1, a2, a3, a4) = PD;
    let mut pa = 0.0;
    let mut pb = 0.0;
    assert_eq!(
        unsafe { epr_payoff_direct(live, a1, a2, a3, a4, 1.5, 0.0, &mut pa, &mut pb) },
        EprStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { epr_payoff_direct(live, f64::NAN, a2, a3, a4, 0.5, 0.5, &mut pa, &mut pb) },
        EprStatus::InvalidArgument
    );
    unsafe { epr_table_free(live) };
    // Freeing null is a no-op.
    unsafe { epr_table_free(ptr::null_mut()) };
    unsafe { epr_equilibria_free(ptr::null_mut()) };
}

#[test]
fn equilibria_surface_reports_points_and_continuum() {
    let table = build_maximal();
    let (a1, a2, a3, a4) = PD;
    let mut set = ptr::null_mut();
    assert_eq!(
        unsafe { epr_equilibria(table, a1, a2, a3, a4, 1e-9, &mut set) },
        EprStatus::Ok
    );
    assert!(!unsafe { epr_equilibria_is_continuum(set) });
    assert_eq!(unsafe { epr_equilibria_count(set) }, 2);

    let mut ne = EprNash {
        x: -1.0,
        y: -1.0,
        payoff_a: 0.0,
        payoff_b: 0.0,
        strict: false,
    };
    assert_eq!(unsafe { epr_equilibria_get(set, 0, &mut ne) }, EprStatus::Ok);
    assert_eq!((ne.x, ne.y), (0.0, 0.0));
    assert!(ne.strict);
    assert!((ne.payoff_a - (18.0 + SQRT_2) / 8.0).abs() <= 1e-12);

    assert_eq!(unsafe { epr_equilibria_get(set, 1, &mut ne) }, EprStatus::Ok);
    assert_eq!((ne.x, ne.y), (1.0, 1.0));
    assert!(!ne.strict);
    assert!((ne.payoff_a - (18.0 - SQRT_2) / 8.0).abs() <= 1e-12);

    assert_eq!(
        unsafe { epr_equilibria_get(set, 2, &mut ne) },
        EprStatus::InvalidArgument
    );
    unsafe { epr_equilibria_free(set) };
    unsafe { epr_table_free(table) };

    // Offsets that null the response bracket yield the continuum flag.
    let mut flat = ptr::null_mut();
    assert_eq!(
        unsafe { epr_table_embedding(0.0, 0.5, 0.0, 0.5, 0.0, &mut flat) },
        EprStatus::Ok
    );
    let mut set = ptr::null_mut();
    assert_eq!(
        unsafe { epr_equilibria(flat, 4.0, 1.0, 3.0, 3.0, 1e-9, &mut set) },
        EprStatus::Ok
    );
    assert!(unsafe { epr_equilibria_is_continuum(set) });
    assert_eq!(unsafe { epr_equilibria_count(set) }, 4);
    unsafe { epr_equilibria_free(set) };
    unsafe { epr_table_free(flat) };
}

#[test]
fn simulation_is_exact_when_degenerate_and_reproducible() {
    let table = build_classical();
    let (a1, a2, a3, a4) = PD;
    let mut first = EprSimSummary {
        runs: 0,
        mean_a: 0.0,
        mean_b: 0.0,
        stderr_a: 0.0,
        stderr_b: 0.0,
        counts: [0; 16],
    };
    let mut second = first;
    let status =
        unsafe { epr_simulate(table, a1, a2, a3, a4, 0.0, 0.0, 100_000, 5, &mut first) };
    assert_eq!(status, EprStatus::Ok);
    assert_eq!(first.mean_a, 1.0);
    assert_eq!(first.stderr_a, 0.0);
    assert_eq!(first.counts[15], 100_000);

    let status =
        unsafe { epr_simulate(table, a1, a2, a3, a4, 0.0, 0.0, 100_000, 5, &mut second) };
    assert_eq!(status, EprStatus::Ok);
    assert_eq!(first, second);

    assert_eq!(
        unsafe { epr_simulate(table, a1, a2, a3, a4, 0.0, 0.0, 0, 5, &mut first) },
        EprStatus::InvalidArgument
    );
    unsafe { epr_table_free(table) };
}

#[test]
fn factorization_is_exposed() {
    let mut product = ptr::null_mut();
    assert_eq!(
        unsafe { epr_table_factorizable(0.7, 0.2, &mut product) },
        EprStatus::Ok
    );
    let mut marginals = [0.0; 4];
    assert!(unsafe { epr_table_factorize(product, 1e-9, marginals.as_mut_ptr()) });
    assert!((marginals[0] - 0.7).abs() <= 1e-9);
    assert!((marginals[1] - 0.2).abs() <= 1e-9);
    unsafe { epr_table_free(product) };

    let correlated = build_maximal();
    assert!(!unsafe { epr_table_factorize(correlated, 1e-9, ptr::null_mut()) });
    unsafe { epr_table_free(correlated) };
}

#[test]
fn generated_header_covers_the_surface() {
    let header_path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/epr_games.h");
    let header = fs::read_to_string(header_path).expect("header generated by the build script");
    for needle in [
        "EPR_GAMES_H",
        "typedef struct EprTable EprTable;",
        "typedef struct EprEquilibria EprEquilibria;",
        "epr_table_embedding",
        "epr_equilibria_get",
        "epr_simulate",
        "EPR_STATUS_OK",
    ] {
        assert!(header.contains(needle), "header lacks {needle:?}:\n{header}");
    }

    // Best-effort C syntax check when a compiler is on the PATH.
    let cc_present = Command::new("cc")
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success());
    if !cc_present {
        eprintln!("cc not found; skipping header syntax check");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let main_c = dir.path().join("use_header.c");
    fs::write(
        &main_c,
        "#include \"epr_games.h\"\nint main(void) { return epr_version() == 0; }\n",
    )
    .unwrap();
    let include_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let out = Command::new("cc")
        .args(["-fsyntax-only", "-I", include_dir])
        .arg(&main_c)
        .output()
        .expect("cc runs");
    assert!(
        out.status.success(),
        "header failed C syntax check:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
