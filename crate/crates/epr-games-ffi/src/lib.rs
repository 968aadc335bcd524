//! C ABI over the epr-games library.
//!
//! Tables and equilibrium sets cross the boundary as opaque handles that
//! must be released with their matching `_free` function. Every fallible
//! call returns an [`EprStatus`] and writes its result through out
//! pointers, so the surface stays usable from any language with a C FFI.
//!
//! The generated header lives at `include/epr_games.h` and is refreshed by
//! the build script.

#![deny(unsafe_op_in_unsafe_fn)]

use std::ffi::c_char;

use epr_games::{
    build_embedding, build_factorizable, build_nonfact_general, chsh_delta, classify, epsilons,
    factorize, find_equilibria, payoff_direct, simulate, validate, vtriple_from_table, DomainClass,
    EquilibriumSet, Error, FactorParams, JointProbabilityTable, NeKind, NonFactParams,
    PayoffMatrix, SimConfig, StrategyProfile,
};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EprStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range, non-finite, or otherwise malformed.
    InvalidArgument = 2,
    /// A probability parameter or table entry left `[0, 1]`.
    InvalidProbability = 3,
    /// The table failed a structural constraint required by the operation.
    ConstraintViolation = 4,
    /// The computation is undefined for these inputs.
    Degenerate = 5,
    /// The payoff matrix is not in the game class the operation expects.
    WrongGameClass = 6,
}

fn status_of(e: &Error) -> EprStatus {
    match e {
        Error::InvalidProbability { .. } | Error::NegativeParameter { .. } => {
            EprStatus::InvalidProbability
        }
        Error::ConstraintViolation { .. } => EprStatus::ConstraintViolation,
        Error::Degenerate(_) => EprStatus::Degenerate,
        Error::WrongGameClass { .. } => EprStatus::WrongGameClass,
        _ => EprStatus::InvalidArgument,
    }
}

/// Opaque joint-probability table.
pub struct EprTable(JointProbabilityTable);

/// Opaque equilibrium set.
pub struct EprEquilibria(EquilibriumSet);

/// Correlation-domain classes, mirroring the library enum.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EprDomain {
    Factorizable = 0,
    LocalNonFactorizable = 1,
    Quantum = 2,
    SuperQuantum = 3,
}

/// Constraint residuals plus the factorization, if one exists. When
/// `factorizable` is false the four marginals are zero.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EprValidation {
    pub ok: bool,
    pub normalization_residual: f64,
    pub symmetry_residual: f64,
    pub causality_residual: f64,
    pub factorizable: bool,
    pub r: f64,
    pub s: f64,
    pub r_prime: f64,
    pub s_prime: f64,
}

/// Domain classification of a structurally valid table.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EprClassification {
    pub domain: EprDomain,
    /// Whether `|delta|` sits on the bound separating `domain` from the
    /// next class, within the tolerance passed to the call.
    pub boundary: bool,
    pub delta: f64,
}

/// One Nash equilibrium.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EprNash {
    pub x: f64,
    pub y: f64,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub strict: bool,
}

/// Simulation tallies and derived statistics. `counts` is indexed
/// `4*pair + outcome` with pairs and outcomes in table order.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprSimSummary {
    pub runs: u64,
    pub mean_a: f64,
    pub mean_b: f64,
    pub stderr_a: f64,
    pub stderr_b: f64,
    pub counts: [u64; 16],
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn epr_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Static name for a status code; do not free.
#[no_mangle]
pub extern "C" fn epr_status_name(status: EprStatus) -> *const c_char {
    let name = match status {
        EprStatus::Ok => c"ok",
        EprStatus::NullPointer => c"null pointer",
        EprStatus::InvalidArgument => c"invalid argument",
        EprStatus::InvalidProbability => c"invalid probability",
        EprStatus::ConstraintViolation => c"constraint violation",
        EprStatus::Degenerate => c"degenerate",
        EprStatus::WrongGameClass => c"wrong game class",
    };
    name.as_ptr()
}

fn boxed_table(table: JointProbabilityTable) -> *mut EprTable {
    Box::into_raw(Box::new(EprTable(table)))
}

/// Writes a freshly boxed table through `out`.
///
/// # Safety
/// `out` must be null or a valid pointer to writable storage for one
/// `*mut EprTable`.
unsafe fn emit_table(
    built: Result<JointProbabilityTable, Error>,
    out: *mut *mut EprTable,
) -> EprStatus {
    if out.is_null() {
        return EprStatus::NullPointer;
    }
    match built {
        Ok(table) => {
            unsafe { out.write(boxed_table(table)) };
            EprStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a table from 16 entries in `p1..p16` order.
///
/// # Safety
/// `entries` must point to at least 16 readable `double`s; `out` must be
/// valid for writing one `*mut EprTable`.
#[no_mangle]
pub unsafe extern "C" fn epr_table_from_entries(
    entries: *const f64,
    out: *mut *mut EprTable,
) -> EprStatus {
    if entries.is_null() {
        return EprStatus::NullPointer;
    }
    let mut raw = [0.0; 16];
    for (i, slot) in raw.iter_mut().enumerate() {
        *slot = unsafe { entries.add(i).read() };
    }
    unsafe { emit_table(JointProbabilityTable::from_entries(raw), out) }
}

/// Builds the product table with marginals `r` and `s`.
///
/// # Safety
/// `out` must be valid for writing one `*mut EprTable`.
#[no_mangle]
pub unsafe extern "C" fn epr_table_factorizable(
    r: f64,
    s: f64,
    out: *mut *mut EprTable,
) -> EprStatus {
    let built = FactorParams::new(r, s).map(|fp| build_factorizable(&fp));
    unsafe { emit_table(built, out) }
}

/// Builds a table from a factorizable baseline `(r, s)` plus offsets.
///
/// # Safety
/// `out` must be valid for writing one `*mut EprTable`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn epr_table_general(
    r: f64,
    s: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    out: *mut *mut EprTable,
) -> EprStatus {
    let built = FactorParams::new(r, s)
        .and_then(|fp| NonFactParams::new(a, b, c, d, e).map(|np| (fp, np)))
        .and_then(|(fp, np)| build_nonfact_general(&fp, &np));
    unsafe { emit_table(built, out) }
}

/// Builds a table from the classical embedding with nonnegative offsets.
///
/// # Safety
/// `out` must be valid for writing one `*mut EprTable`.
#[no_mangle]
pub unsafe extern "C" fn epr_table_embedding(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    out: *mut *mut EprTable,
) -> EprStatus {
    let built = NonFactParams::new(a, b, c, d, e).and_then(|np| build_embedding(&np));
    unsafe { emit_table(built, out) }
}

/// Copies the 16 entries of `table` into `out` in `p1..p16` order.
///
/// # Safety
/// `table` must be a live handle from this library; `out` must point to
/// writable storage for 16 `double`s.
#[no_mangle]
pub unsafe extern "C" fn epr_table_entries(table: *const EprTable, out: *mut f64) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let entries = unsafe { &(*table).0 }.entries();
    for (i, v) in entries.iter().enumerate() {
        unsafe { out.add(i).write(*v) };
    }
    EprStatus::Ok
}

/// Releases a table handle. Null is a no-op.
///
/// # Safety
/// `table` must be null or a handle produced by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn epr_table_free(table: *mut EprTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Runs all structural validators at `tol` and reports residuals.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writing one
/// `EprValidation`.
#[no_mangle]
pub unsafe extern "C" fn epr_table_validate(
    table: *const EprTable,
    tol: f64,
    out: *mut EprValidation,
) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let report = validate(unsafe { &(*table).0 }, tol);
    let f = report.factorization;
    let result = EprValidation {
        ok: report.all_ok(),
        normalization_residual: report.normalization.residual,
        symmetry_residual: report.symmetry.residual,
        causality_residual: report.causality.residual,
        factorizable: f.is_some(),
        r: f.map_or(0.0, |f| f.r),
        s: f.map_or(0.0, |f| f.s),
        r_prime: f.map_or(0.0, |f| f.r_prime),
        s_prime: f.map_or(0.0, |f| f.s_prime),
    };
    unsafe { out.write(result) };
    EprStatus::Ok
}

/// Classifies a structurally valid table against the correlation bounds.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writing one
/// `EprClassification`.
#[no_mangle]
pub unsafe extern "C" fn epr_table_classify(
    table: *const EprTable,
    tol: f64,
    out: *mut EprClassification,
) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    match classify(unsafe { &(*table).0 }, tol) {
        Ok(cls) => {
            let domain = match cls.class {
                DomainClass::Factorizable => EprDomain::Factorizable,
                DomainClass::LocalNonFactorizable => EprDomain::LocalNonFactorizable,
                DomainClass::Quantum => EprDomain::Quantum,
                DomainClass::SuperQuantum => EprDomain::SuperQuantum,
            };
            unsafe {
                out.write(EprClassification {
                    domain,
                    boundary: cls.boundary,
                    delta: cls.delta,
                })
            };
            EprStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the correlation sum of `table` to `out`.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for one `double`.
#[no_mangle]
pub unsafe extern "C" fn epr_chsh_delta(table: *const EprTable, out: *mut f64) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    unsafe { out.write(chsh_delta(&(*table).0)) };
    EprStatus::Ok
}

/// Closed-form correlation sum of the classical embedding,
/// `4*(a - c + 2e - 1/2)`. Pure; no validity check.
#[no_mangle]
pub extern "C" fn epr_chsh_delta_embedding(a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let np = NonFactParams { a, b, c, d, e };
    epr_games::chsh_delta_embedding(&np)
}

/// Whether embedding offsets respect the quantum correlation bound.
#[no_mangle]
pub extern "C" fn epr_cirelson_ok(a: f64, b: f64, c: f64, d: f64, e: f64, tol: f64) -> bool {
    let np = NonFactParams { a, b, c, d, e };
    epr_games::cirelson_ok(&np, tol)
}

/// Writes the three offset summaries `eps1, eps2, eps3` to `out`.
///
/// # Safety
/// `out` must point to writable storage for 3 `double`s.
#[no_mangle]
pub unsafe extern "C" fn epr_epsilons(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    out: *mut f64,
) -> EprStatus {
    if out.is_null() {
        return EprStatus::NullPointer;
    }
    let eps = epsilons(&NonFactParams { a, b, c, d, e });
    unsafe {
        out.write(eps.e1);
        out.add(1).write(eps.e2);
        out.add(2).write(eps.e3);
    }
    EprStatus::Ok
}

fn matrix_from(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<PayoffMatrix, Error> {
    PayoffMatrix::new(a1, a2, a3, a4)
}

/// Expected payoffs of both players at the mixed profile `(x, y)`.
///
/// # Safety
/// `table` must be a live handle; `out_a` and `out_b` must each be valid
/// for one `double`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn epr_payoff_direct(
    table: *const EprTable,
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    x: f64,
    y: f64,
    out_a: *mut f64,
    out_b: *mut f64,
) -> EprStatus {
    if table.is_null() || out_a.is_null() || out_b.is_null() {
        return EprStatus::NullPointer;
    }
    let m = match matrix_from(a1, a2, a3, a4) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let profile = match StrategyProfile::new(x, y) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let (pa, pb) = payoff_direct(unsafe { &(*table).0 }, &m, &profile);
    unsafe {
        out_a.write(pa);
        out_b.write(pb);
    }
    EprStatus::Ok
}

/// Computes the equilibrium set of the symmetric game over `table` and
/// writes an owned handle through `out`.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writing one
/// `*mut EprEquilibria`.
#[no_mangle]
pub unsafe extern "C" fn epr_equilibria(
    table: *const EprTable,
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    tol: f64,
    out: *mut *mut EprEquilibria,
) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let m = match matrix_from(a1, a2, a3, a4) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let t = unsafe { &(*table).0 };
    let set = find_equilibria(&m, &vtriple_from_table(t), t.p(13), t.p(14), tol);
    unsafe { out.write(Box::into_raw(Box::new(EprEquilibria(set)))) };
    EprStatus::Ok
}

/// Number of discrete equilibrium points in `set`; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle from `epr_equilibria`.
#[no_mangle]
pub unsafe extern "C" fn epr_equilibria_count(set: *const EprEquilibria) -> usize {
    if set.is_null() {
        return 0;
    }
    unsafe { &(*set).0 }.points.len()
}

/// Whether every profile is an equilibrium (the listed points are then
/// corner representatives). False for null.
///
/// # Safety
/// `set` must be null or a live handle from `epr_equilibria`.
#[no_mangle]
pub unsafe extern "C" fn epr_equilibria_is_continuum(set: *const EprEquilibria) -> bool {
    !set.is_null() && unsafe { &(*set).0 }.is_continuum()
}

/// Copies equilibrium `index` into `out`.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for one `EprNash`.
#[no_mangle]
pub unsafe extern "C" fn epr_equilibria_get(
    set: *const EprEquilibria,
    index: usize,
    out: *mut EprNash,
) -> EprStatus {
    if set.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let Some(ne) = unsafe { &(*set).0 }.points.get(index) else {
        return EprStatus::InvalidArgument;
    };
    unsafe {
        out.write(EprNash {
            x: ne.x,
            y: ne.y,
            payoff_a: ne.payoff_a,
            payoff_b: ne.payoff_b,
            strict: ne.kind == NeKind::Strict,
        })
    };
    EprStatus::Ok
}

/// Releases an equilibrium-set handle. Null is a no-op.
///
/// # Safety
/// `set` must be null or a handle produced by `epr_equilibria` that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn epr_equilibria_free(set: *mut EprEquilibria) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Runs the referee protocol for `runs` rounds at profile `(x, y)` and
/// writes the tallies and payoff statistics. Identical inputs produce
/// identical summaries regardless of worker count.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for writing one
/// `EprSimSummary`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn epr_simulate(
    table: *const EprTable,
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    x: f64,
    y: f64,
    runs: u64,
    seed: u64,
    out: *mut EprSimSummary,
) -> EprStatus {
    if table.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let m = match matrix_from(a1, a2, a3, a4) {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let profile = match StrategyProfile::new(x, y) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let cfg = SimConfig {
        runs,
        seed,
        profile,
    };
    match simulate(unsafe { &(*table).0 }, &m, &cfg) {
        Ok(r) => {
            let mut counts = [0u64; 16];
            for (pair, row) in r.counts.iter().enumerate() {
                counts[4 * pair..4 * pair + 4].copy_from_slice(row);
            }
            unsafe {
                out.write(EprSimSummary {
                    runs: r.runs,
                    mean_a: r.mean_a,
                    mean_b: r.mean_b,
                    stderr_a: r.stderr_a,
                    stderr_b: r.stderr_b,
                    counts,
                })
            };
            EprStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Whether `table` factorizes at `tol`; marginals are written to `out4`
/// as `r, s, r', s'` when it does.
///
/// # Safety
/// `table` must be a live handle; `out4` must be null or valid for 4
/// `double`s.
#[no_mangle]
pub unsafe extern "C" fn epr_table_factorize(
    table: *const EprTable,
    tol: f64,
    out4: *mut f64,
) -> bool {
    if table.is_null() {
        return false;
    }
    match factorize(unsafe { &(*table).0 }, tol) {
        Some(f) => {
            if !out4.is_null() {
                unsafe {
                    out4.write(f.r);
                    out4.add(1).write(f.s);
                    out4.add(2).write(f.r_prime);
                    out4.add(3).write(f.s_prime);
                }
            }
            true
        }
        None => false,
    }
}
