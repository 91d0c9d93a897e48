//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line (run with `--nocapture` to watch them land).
//!
//! The criteria pin the toolkit end to end: the validator catches table
//! corruption, two independently implemented resolution engines agree on
//! Ext/Tor, the cleft-extension identities hold exactly on curated suites,
//! the perfect-bimodule and Gorenstein verdicts match hand-checked values,
//! projective dimension reflects along the restriction functor, the
//! singular-equivalence and eventually-homological-isomorphism probes behave
//! on the curated positives and are gated on the counterexample, and the CLI
//! emits byte-identical suite bundles for identical config and seed.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use cleftlab::algebra::Algebra;
use cleftlab::catalog::{
    builtin_algebra, dual_numbers, e2_bimodule, e2_suite, e3_bimodule, e3_suite, e4_bimodule,
    e4_suite, e6_suite, ka2, ALGEBRA_NAMES,
};
use cleftlab::cleft::verify_cleft_identities;
use cleftlab::exactlinalg::{Fp, Matrix, Subspace};
use cleftlab::gorenstein::{gorenstein_report, gproj_test, transfer_report};
use cleftlab::homology::{
    ext_dims, indecomposable_projective, injective_dimension, is_projective,
    projective_dimension, tor_dims, Dimension,
};
use cleftlab::io::{algebra_data_from_file, algebra_to_file};
use cleftlab::modules::{random_module, seeded_rng, Bimodule, ModuleMap, RightModule};
use cleftlab::perfect::{perfect_report, NilpotencyIndex, PerfectCutoffs, PerfectVerdict};
use cleftlab::singularity::{ehi_probe, sing_equiv_report, SingCriterion, SingVerdict};

const P: u64 = 101;
const SEED: u64 = 0xC1EF;

fn field() -> Fp {
    Fp::new(P).expect("101 is prime")
}

fn cutoffs() -> PerfectCutoffs {
    PerfectCutoffs { nilpotency: 16, resolution: 24, ext_window: 8, seed: SEED }
}

/// Print the criterion's one-line verdict; panic (failing the test) when any
/// check inside it failed or the time budget was exceeded.
fn finish(
    number: usize,
    label: &str,
    start: Instant,
    limit: Duration,
    mut failures: Vec<String>,
    detail: String,
) {
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, budget {limit:.2?}"));
    }
    if failures.is_empty() {
        println!("criterion {number:2}: PASS — {label}: {detail} [{elapsed:.2?}]");
    } else {
        println!("criterion {number:2}: FAIL — {label}: {}", failures.join("; "));
        panic!("criterion {number} ({label}) failed:\n  {}", failures.join("\n  "));
    }
}

/// All simples, the regular module, and `extra` seeded random modules — the
/// same sampling the CLI uses for identity and singularity checks.
fn standard_samples(algebra: &Arc<Algebra>, extra: usize, seed: u64) -> Vec<RightModule> {
    let mut samples: Vec<RightModule> = (0..algebra.idempotents().len())
        .map(|t| RightModule::simple(algebra.clone(), t))
        .collect();
    samples.push(RightModule::regular(algebra.clone()));
    let mut rng = seeded_rng(seed);
    for _ in 0..extra {
        samples.push(random_module(algebra, &mut rng, 3));
    }
    samples
}

// ---------------------------------------------------------------------------
// Criterion 1 — the validator accepts the curated algebras and flags every
// seeded single-entry corruption of their multiplication tables.
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_validator_catches_single_entry_mutations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    assert_eq!(ALGEBRA_NAMES.len(), 7, "curated catalog holds seven algebras");
    let mut mutations = 0usize;
    for (idx, name) in ALGEBRA_NAMES.iter().enumerate() {
        let algebra = builtin_algebra(name, f).expect("curated algebra builds");
        let data = algebra_data_from_file(&algebra_to_file(&algebra))
            .expect("exported algebra file round-trips");
        match Algebra::validate(&data) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => failures.push(format!("{name}: clean export reports {} violations", v.len())),
            Err(e) => failures.push(format!("{name}: clean export rejected outright: {e}")),
        }
        let mut rng = seeded_rng(SEED + idx as u64);
        for trial in 0..50 {
            let mut mutated = data.clone();
            let slot = rng.gen_range(0..mutated.structure.len());
            let old = mutated.structure[slot];
            mutated.structure[slot] = (old + rng.gen_range(1..P)) % P;
            mutations += 1;
            match Algebra::validate(&mutated) {
                Ok(v) if v.is_empty() => failures.push(format!(
                    "{name} trial {trial}: mutation at flat index {slot} ({old} → {}) validated",
                    mutated.structure[slot]
                )),
                Ok(_) => {}
                Err(e) => {
                    failures.push(format!("{name} trial {trial}: validator errored: {e}"))
                }
            }
        }
    }
    finish(
        1,
        "validator + seeded mutations",
        start,
        Duration::from_secs(5),
        failures,
        format!("7 curated algebras validate; all {mutations} single-entry mutations are flagged"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 2 — Ext/Tor dimension tables computed from minimal resolutions
// agree exactly, in degrees 0–6, with tables computed here from a second,
// independently implemented engine: non-minimal free resolutions whose covers
// are full copies of the regular module (never the indecomposable summands
// the minimal engine peels off), with Hom and ⊗ applied degreewise to the
// differentials' algebra-entry tables rather than to module maps.
// ---------------------------------------------------------------------------

/// Indices of standard basis vectors of `x` lifting a basis of x/x·rad.  By
/// Nakayama they generate x, so the free module on them surjects onto it.
fn generator_indices(x: &RightModule) -> Vec<usize> {
    let f = x.algebra().field();
    let rad = x.radical_submodule();
    let mut rows: Vec<Vec<u64>> = (0..rad.dim()).map(|r| rad.basis().row(r).to_vec()).collect();
    let mut picks = Vec::new();
    for v in 0..x.dim() {
        let ev: Vec<u64> = (0..x.dim()).map(|k| u64::from(k == v)).collect();
        if Subspace::from_vectors(f, x.dim(), &rows).coords(&ev).is_none() {
            picks.push(v);
            rows.push(ev);
        }
    }
    picks
}

/// The free cover A^t → x sending the u-th free generator to the u-th chosen
/// module generator, as a checked module map (`ModuleMap::new` verifies the
/// matrix intertwines the actions, so a layout mistake cannot slip through).
fn free_cover(x: &RightModule) -> ModuleMap {
    let algebra = x.algebra().clone();
    let da = algebra.dim();
    let gens = generator_indices(x);
    let free = RightModule::free(algebra.clone(), gens.len());
    let mut mat = Matrix::zero(algebra.field(), x.dim(), gens.len() * da);
    for (u, &g) in gens.iter().enumerate() {
        for b in 0..da {
            let col = x.action()[b].col_vec(g);
            for (r, &entry) in col.iter().enumerate() {
                mat.set(r, u * da + b, entry);
            }
        }
    }
    ModuleMap::new(free, x.clone(), mat).expect("free covers intertwine the actions")
}

/// A free resolution … → A^{g_1} → A^{g_0} → x → 0 built from free covers of
/// successive kernels.  Each differential d_i: A^{g_i} → A^{g_{i−1}} is
/// stored as the table of its algebra entries: d_i(e_v⊗1) = Σ_u e_u⊗a_{uv}.
struct FreeResolution {
    ranks: Vec<usize>,
    /// entries[i][u][v] = coordinates of a_{uv} in the differential d_{i+1}.
    entries: Vec<Vec<Vec<Vec<u64>>>>,
}

fn free_resolution(x: &RightModule, steps: usize) -> FreeResolution {
    let algebra = x.algebra().clone();
    let da = algebra.dim();
    let mut ranks: Vec<usize> = Vec::with_capacity(steps + 1);
    let mut entries = Vec::with_capacity(steps);
    let mut covered = x.clone();
    let mut include_prev: Option<ModuleMap> = None;
    for step in 0..=steps {
        if covered.dim() == 0 {
            // The resolution has terminated: all further free modules vanish.
            let g_prev = if step == 0 { 0 } else { ranks[step - 1] };
            ranks.push(0);
            if step > 0 {
                entries.push(vec![Vec::new(); g_prev]);
            }
            include_prev = None;
            continue;
        }
        let cover = free_cover(&covered);
        let rank = cover.source().dim() / da;
        ranks.push(rank);
        if step > 0 {
            let incl = include_prev.take().expect("a nonzero kernel carries its inclusion");
            let d = incl.compose(&cover);
            entries.push(differential_entries(&algebra, &d, ranks[step - 1], rank));
        }
        let (kernel, inclusion) = cover.kernel();
        covered = kernel;
        include_prev = Some(inclusion);
    }
    FreeResolution { ranks, entries }
}

/// Read the algebra-entry table of a differential between free modules off
/// the images of the generators e_v⊗1.
fn differential_entries(
    algebra: &Arc<Algebra>,
    d: &ModuleMap,
    g_prev: usize,
    g_cur: usize,
) -> Vec<Vec<Vec<u64>>> {
    let da = algebra.dim();
    let mut out = vec![vec![vec![0u64; da]; g_cur]; g_prev];
    for v in 0..g_cur {
        let mut ev = vec![0u64; g_cur * da];
        ev[v * da..(v + 1) * da].copy_from_slice(algebra.unit());
        let image = d.matrix().apply(&ev);
        for (u, row) in out.iter_mut().enumerate() {
            row[v] = image[u * da..(u + 1) * da].to_vec();
        }
    }
    out
}

/// Matrix of the action of Σ_k coords[k]·b_k in the given representation.
fn action_of_element(coords: &[u64], action: &[Matrix], dim: usize, f: Fp) -> Matrix {
    Matrix::from_fn(f, dim, dim, |r, c| {
        let mut s = 0;
        for (k, &a) in coords.iter().enumerate() {
            s = f.add(s, f.mul(a, action[k].get(r, c)));
        }
        s
    })
}

/// Ext^n(x, y) for n = 0, …, window from the free resolution of x:
/// Hom_A(A^{g_i}, Y) ≅ Y^{g_i}, and composing with d_{i+1} sends (y_u)_u to
/// (Σ_u y_u·a_{uv})_v.
fn oracle_ext_dims(res: &FreeResolution, y: &RightModule, window: usize) -> Vec<usize> {
    let f = y.algebra().field();
    let dy = y.dim();
    let delta_rank = |i: usize| -> usize {
        let (g_prev, g_cur) = (res.ranks[i], res.ranks[i + 1]);
        let mut m = Matrix::zero(f, g_cur * dy, g_prev * dy);
        for (u, row) in res.entries[i].iter().enumerate() {
            for (v, coords) in row.iter().enumerate() {
                let b = action_of_element(coords, y.action(), dy, f);
                for r in 0..dy {
                    for c in 0..dy {
                        m.set(v * dy + r, u * dy + c, b.get(r, c));
                    }
                }
            }
        }
        m.rank()
    };
    let mut out = Vec::with_capacity(window + 1);
    let mut prev = 0usize;
    for n in 0..=window {
        let next = delta_rank(n);
        out.push(res.ranks[n] * dy - next - prev);
        prev = next;
    }
    out
}

/// Tor_n(x, m) for n = 0, …, window from the free resolution of x:
/// A^{g_i}⊗_A M ≅ M^{g_i}, and d_i⊗id sends (m_v)_v to (Σ_v a_{uv}·m_v)_u.
fn oracle_tor_dims(res: &FreeResolution, m: &Bimodule, window: usize) -> Vec<usize> {
    let f = m.left_algebra().field();
    let dm = m.dim();
    let partial_rank = |i: usize| -> usize {
        let (g_prev, g_cur) = (res.ranks[i - 1], res.ranks[i]);
        let mut mat = Matrix::zero(f, g_prev * dm, g_cur * dm);
        for (u, row) in res.entries[i - 1].iter().enumerate() {
            for (v, coords) in row.iter().enumerate() {
                let b = action_of_element(coords, m.left_action(), dm, f);
                for r in 0..dm {
                    for c in 0..dm {
                        mat.set(u * dm + r, v * dm + c, b.get(r, c));
                    }
                }
            }
        }
        mat.rank()
    };
    let mut boundary_ranks = vec![0usize; window + 2];
    for (i, slot) in boundary_ranks.iter_mut().enumerate().skip(1) {
        *slot = partial_rank(i);
    }
    (0..=window).map(|n| res.ranks[n] * dm - boundary_ranks[n] - boundary_ranks[n + 1]).collect()
}

/// Every simple, the regular module when it fits the cap, and seeded random
/// modules — all of dimension ≤ 3.
fn small_modules(algebra: &Arc<Algebra>, seed: u64) -> Vec<RightModule> {
    let mut family: Vec<RightModule> = (0..algebra.idempotents().len())
        .map(|t| RightModule::simple(algebra.clone(), t))
        .collect();
    if algebra.dim() <= 3 {
        family.push(RightModule::regular(algebra.clone()));
    }
    let mut rng = seeded_rng(seed);
    let target = family.len() + 6;
    for _ in 0..300 {
        if family.len() >= target {
            break;
        }
        let x = random_module(algebra, &mut rng, 3);
        if (1..=3).contains(&x.dim()) {
            family.push(x);
        }
    }
    family
}

/// Bimodules to feed the Tor comparison: the regular bimodule everywhere,
/// plus the catalog bimodules whose base algebra matches.
fn tor_test_bimodules(name: &str, algebra: &Arc<Algebra>, f: Fp) -> Vec<Bimodule> {
    let mut out = vec![Bimodule::regular(algebra.clone())];
    match name {
        "k-times-k" => out.push(e2_bimodule(algebra).expect("e2 bimodule builds")),
        "dual-numbers" => {
            let b = builtin_algebra("f101", f).expect("f101 builds");
            out.push(e3_bimodule(algebra, &b).expect("e3 bimodule builds"));
        }
        "ka2" => out.push(e4_bimodule(algebra).expect("e4 bimodule builds")),
        _ => {}
    }
    out
}

#[test]
fn criterion_02_minimal_and_free_resolution_tables_agree() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    const WINDOW: usize = 6;
    let small: Vec<&str> = ALGEBRA_NAMES
        .iter()
        .copied()
        .filter(|n| builtin_algebra(n, f).expect("curated algebra builds").dim() <= 5)
        .collect();
    assert_eq!(small.len(), 6, "six curated algebras have dimension ≤ 5");
    let (mut ext_tables, mut tor_tables) = (0usize, 0usize);
    for (idx, name) in small.iter().enumerate() {
        let algebra = builtin_algebra(name, f).expect("curated algebra builds");
        let family = small_modules(&algebra, SEED + idx as u64);
        let bimodules = tor_test_bimodules(name, &algebra, f);
        for x in &family {
            let res = free_resolution(x, WINDOW + 1);
            for y in &family {
                let minimal = ext_dims(x, y, WINDOW);
                let free = oracle_ext_dims(&res, y, WINDOW);
                ext_tables += 1;
                if minimal != free {
                    failures.push(format!(
                        "{name}: Ext(dim-{} module, dim-{} module): minimal {minimal:?} ≠ free {free:?}",
                        x.dim(),
                        y.dim()
                    ));
                }
            }
            for m in &bimodules {
                let minimal = tor_dims(x, m, WINDOW).expect("tensor factors match");
                let free = oracle_tor_dims(&res, m, WINDOW);
                tor_tables += 1;
                if minimal != free {
                    failures.push(format!(
                        "{name}: Tor(dim-{} module, dim-{} bimodule): minimal {minimal:?} ≠ free {free:?}",
                        x.dim(),
                        m.dim()
                    ));
                }
            }
        }
    }
    finish(
        2,
        "two resolution engines",
        start,
        Duration::from_secs(60),
        failures,
        format!(
            "{ext_tables} Ext and {tor_tables} Tor tables agree exactly over {} algebras, degrees 0–{WINDOW}",
            small.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 3 — the cleft-extension identities hold exactly on e2/e3/e4 with
// samples covering every simple and the regular module.
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_cleft_identities_hold_exactly() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let mut checks = 0usize;
    for (name, suite) in [("e2", e2_suite(f)), ("e3", e3_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let samples = standard_samples(&suite.lambda, 3, SEED);
        let report = perfect_report(&suite.m, &cutoffs());
        let max_n = match report.nilpotency {
            NilpotencyIndex::Within(s) => s.max(1),
            NilpotencyIndex::NotWithin(_) => 2,
        };
        let verification =
            verify_cleft_identities(&suite, &samples, max_n).expect("identity checks run");
        if verification.checks.is_empty() {
            failures.push(format!("{name}: no checks ran"));
        }
        checks += verification.checks.len();
        for c in verification.checks.iter().filter(|c| !c.passed) {
            failures.push(format!("{name}: {} — {}", c.name, c.detail));
        }
    }
    finish(
        3,
        "cleft identities",
        start,
        Duration::from_secs(180),
        failures,
        format!("{checks} exact checks across e2/e3/e4 (ei ≅ Id, el split, power match, SES)"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 4 — perfect-bimodule verdicts match hand-checked values, and the
// counterexample's pd_right is certified infinite by syzygy repetition
// already at resolution cutoff 8.
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_perfect_verdicts_match_hand_checked_values() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    for (name, suite) in [("e2", e2_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let report = perfect_report(&suite.m, &cutoffs());
        if report.nilpotency != NilpotencyIndex::Within(2) {
            failures.push(format!("{name}: nilpotency {} ≠ 2", report.nilpotency));
        }
        if report.fd_left != Dimension::Finite(0) {
            failures.push(format!("{name}: fd_left {} ≠ 0", report.fd_left));
        }
        if report.pd_right != Dimension::Finite(0) {
            failures.push(format!("{name}: pd_right {} ≠ 0", report.pd_right));
        }
        if report.verdict != PerfectVerdict::Perfect {
            failures.push(format!("{name}: verdict {:?} is not Perfect", report.verdict));
        }
        if report.vanishing_bound != Some(1) {
            failures.push(format!("{name}: vanishing bound {:?} ≠ 1", report.vanishing_bound));
        }
    }
    let e6 = e6_suite(f).expect("counterexample suite builds");
    let tight = PerfectCutoffs { resolution: 8, ..cutoffs() };
    let report = perfect_report(&e6.m, &tight);
    if report.nilpotency != NilpotencyIndex::NotWithin(16) {
        failures.push(format!("e6: nilpotency {} should exhaust the cutoff 16", report.nilpotency));
    }
    if report.pd_right != Dimension::Infinite {
        failures.push(format!("e6: pd_right {} should certify Infinite at cutoff 8", report.pd_right));
    }
    if !matches!(report.verdict, PerfectVerdict::NotPerfect(_)) {
        failures.push(format!("e6: verdict {:?} is not NotPerfect", report.verdict));
    }
    finish(
        4,
        "perfect verdicts",
        start,
        Duration::from_secs(5),
        failures,
        "e2/e4 perfect with s = 2, fd_left = pd_right = 0; e6 not perfect, pd_right certified infinite".into(),
    );
}

// ---------------------------------------------------------------------------
// Criterion 5 — the Gorenstein biconditional holds on e2/e3/e4, and the
// injective-dimension oracle's measured values are pinned as regression
// constants.
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_gorenstein_biconditional_and_pinned_injective_dimensions() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let pins: [(&str, usize, usize); 4] = [
        ("k-times-k", 0, 0),
        ("ka2", 1, 1),
        ("dual-numbers", 0, 0),
        ("e3-triangular", 1, 1),
    ];
    for (name, right, left) in pins {
        let algebra = builtin_algebra(name, f).expect("curated algebra builds");
        let report = gorenstein_report(&algebra, cutoffs().resolution, SEED);
        if report.id_right != Dimension::Finite(right) {
            failures.push(format!("{name}: id_right {} ≠ {right}", report.id_right));
        }
        if report.id_left != Dimension::Finite(left) {
            failures.push(format!("{name}: id_left {} ≠ {left}", report.id_left));
        }
        // The pins are regression constants for the oracle itself, so check
        // it directly on the regular module too.
        let oracle = injective_dimension(&RightModule::regular(algebra.clone()), cutoffs().resolution, SEED);
        if oracle != Dimension::Finite(right) {
            failures.push(format!("{name}: injective_dimension oracle {oracle} ≠ {right}"));
        }
    }
    for (name, suite) in [("e2", e2_suite(f)), ("e3", e3_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let report = transfer_report(&suite, &cutoffs());
        if report.biconditional != Some(true) {
            failures.push(format!(
                "{name}: Gorenstein biconditional {:?} ≠ Some(true)",
                report.biconditional
            ));
        }
    }
    finish(
        5,
        "Gorenstein biconditional + id pins",
        start,
        Duration::from_secs(180),
        failures,
        "id(k×k) = 0, id(kA₂) = 1, id(k[x]/(x²)) = 0, id(e3 Λ) = 1 on both sides; biconditional holds on e2/e3/e4".into(),
    );
}

// ---------------------------------------------------------------------------
// Criterion 6 — the silp/spli transfer chains bracket the measured middle
// value on e2/e3/e4, with the e2 silp chain pinned exactly.
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_transfer_chains_bracket_the_measured_value() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let silp_pins: [(&str, [usize; 3]); 3] =
        [("e2", [0, 1, 3]), ("e3", [0, 1, 3]), ("e4", [1, 1, 4])];
    for (name, suite) in [("e2", e2_suite(f)), ("e3", e3_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let report = transfer_report(&suite, &cutoffs());
        for (kind, chain) in [("silp", report.silp_chain), ("spli", report.spli_chain)] {
            match chain {
                Some([lo, mid, hi]) => {
                    if !(lo <= mid && mid <= hi) {
                        failures.push(format!(
                            "{name}: {kind} chain {lo} ≤ {mid} ≤ {hi} does not bracket"
                        ));
                    }
                }
                None => failures.push(format!("{name}: {kind} chain missing")),
            }
        }
        let pin = silp_pins.iter().find(|(n, _)| *n == name).expect("pinned").1;
        if report.silp_chain != Some(pin) {
            failures.push(format!(
                "{name}: silp chain {:?} ≠ pinned {pin:?}",
                report.silp_chain
            ));
        }
    }
    finish(
        6,
        "silp/spli transfer chains",
        start,
        Duration::from_secs(180),
        failures,
        "six chains bracket; silp pinned to [0,1,3]/[0,1,3]/[1,1,4] on e2/e3/e4".into(),
    );
}

// ---------------------------------------------------------------------------
// Criterion 7 — projective dimension is preserved and reflected along e on
// seeded random Λ-modules: finiteness transfers both ways, and the computed
// bounds in terms of n_F, m, and the vanishing bound hold with zero
// counterexamples (samples with undetermined pd are excluded and logged).
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_projective_dimension_reflects_along_e() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let (mut counted, mut excluded) = (0usize, 0usize);
    for (name, suite) in [("e2", e2_suite(f)), ("e3", e3_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let report = perfect_report(&suite.m, &cutoffs());
        let (n_f, s, n) = match (&report.pd_right, &report.nilpotency, report.vanishing_bound) {
            (Dimension::Finite(n_f), NilpotencyIndex::Within(s), Some(n)) => (*n_f, *s, n),
            _ => {
                failures.push(format!("{name}: bimodule is not certified perfect"));
                continue;
            }
        };
        let mut rng = seeded_rng(SEED);
        for trial in 0..20 {
            let x = random_module(&suite.lambda, &mut rng, 3);
            let ex = suite.e(&x).expect("restriction applies");
            let pdx = projective_dimension(&x, cutoffs().resolution, SEED);
            let pde = projective_dimension(&ex, cutoffs().resolution, SEED);
            match (pdx, pde) {
                (Dimension::Unknown, _) | (_, Dimension::Unknown) => {
                    excluded += 1;
                    println!(
                        "criterion  7: note — {name} trial {trial}: pd undetermined within cutoff, sample excluded"
                    );
                }
                (Dimension::Finite(px), Dimension::Finite(pe)) => {
                    counted += 1;
                    if pe > px + n_f {
                        failures.push(format!(
                            "{name} trial {trial}: pd e(X) = {pe} > pd X + n_F = {px} + {n_f}"
                        ));
                    }
                    let upper = pe.max((n_f + n).saturating_sub(1)) + (s - 1) * (n_f + 1);
                    if px > upper {
                        failures.push(format!(
                            "{name} trial {trial}: pd X = {px} > {upper} (pd e(X) = {pe}, n_F = {n_f}, m = {s}, n = {n})"
                        ));
                    }
                }
                (Dimension::Infinite, Dimension::Infinite) => counted += 1,
                (a, b) => failures.push(format!(
                    "{name} trial {trial}: finiteness mismatch: pd X = {a}, pd e(X) = {b}"
                )),
            }
        }
    }
    finish(
        7,
        "pd reflection along e",
        start,
        Duration::from_secs(180),
        failures,
        format!("{counted} samples satisfy both bounds; {excluded} excluded as undetermined"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 8 — the singular-equivalence criterion reports Vanishes on e3 and
// e4 with the generator-reduction guard and global-dimension biconditional
// passing, and is gated Not-Applicable on the e6 counterexample.
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_singular_equivalence_criterion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    for (name, suite) in [("e3", e3_suite(f)), ("e4", e4_suite(f))] {
        let suite = suite.expect("curated suite builds");
        let report = perfect_report(&suite.m, &cutoffs());
        let samples = standard_samples(&suite.lambda, 20, SEED);
        let sing = sing_equiv_report(&suite, &report, &samples, &cutoffs())
            .expect("criterion evaluates");
        if !matches!(sing.criterion, SingCriterion::Vanishes) {
            failures.push(format!("{name}: criterion is {}, not vanishing", sing.criterion));
        }
        match sing.lsgf.as_ref().and_then(|l| l.guard) {
            Some(true) => {}
            other => failures.push(format!("{name}: generator-reduction guard {other:?}")),
        }
        if sing.gldim_biconditional != Some(true) {
            failures.push(format!(
                "{name}: gldim biconditional {:?} ≠ Some(true)",
                sing.gldim_biconditional
            ));
        }
        if !matches!(sing.verdict, SingVerdict::Pass) {
            failures.push(format!("{name}: verdict {:?} is not Pass", sing.verdict));
        }
    }
    let e6 = e6_suite(f).expect("counterexample suite builds");
    let report = perfect_report(&e6.m, &cutoffs());
    let samples = standard_samples(&e6.lambda, 5, SEED);
    let sing = sing_equiv_report(&e6, &report, &samples, &cutoffs()).expect("gate evaluates");
    if !matches!(sing.verdict, SingVerdict::NotApplicable(_)) {
        failures.push(format!("e6: verdict {:?} should be Not-Applicable", sing.verdict));
    }
    finish(
        8,
        "singular equivalence criterion",
        start,
        Duration::from_secs(180),
        failures,
        "e3/e4 vanish with guard and gldim biconditional passing; e6 gated Not-Applicable".into(),
    );
}

// ---------------------------------------------------------------------------
// Criterion 9 — the eventually-homological-isomorphism probe on e4 certifies
// threshold 2 and finds exact Ext-dimension agreement in every degree of
// [2, 8] across 20 seeded pairs.
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_ehi_probe_on_e4() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let suite = e4_suite(f).expect("curated suite builds");
    let report = perfect_report(&suite.m, &cutoffs());
    let mut rng = seeded_rng(SEED);
    let pairs: Vec<(RightModule, RightModule)> = (0..20)
        .map(|_| {
            (random_module(&suite.lambda, &mut rng, 3), random_module(&suite.lambda, &mut rng, 3))
        })
        .collect();
    let ehi = ehi_probe(&suite, &pairs, (0, 8), &report, &cutoffs()).expect("probe runs");
    if ehi.threshold != Some(2) {
        failures.push(format!("threshold {:?} ≠ Some(2)", ehi.threshold));
    }
    if ehi.agrees_beyond_threshold != Some(true) {
        failures.push(format!("agreement flag {:?} ≠ Some(true)", ehi.agrees_beyond_threshold));
    }
    if ehi.pairs.len() != 20 {
        failures.push(format!("{} pair reports ≠ 20", ehi.pairs.len()));
    }
    for (i, pair) in ehi.pairs.iter().enumerate() {
        for k in 2..=8usize {
            let (l, g) = (pair.lambda_dims.get(k), pair.gamma_dims.get(k));
            if l != g || l.is_none() {
                failures.push(format!(
                    "pair {i}, degree {k}: dim Ext over Λ {l:?} ≠ dim Ext over Γ {g:?}"
                ));
            }
        }
    }
    finish(
        9,
        "eventually homological isomorphism",
        start,
        Duration::from_secs(180),
        failures,
        "threshold 2 certified; Ext dimensions agree exactly in degrees 2–8 for all 20 pairs".into(),
    );
}

// ---------------------------------------------------------------------------
// Criterion 10 — Gorenstein-projectivity test: true exactly on projectives
// over kA₂, true on everything over the self-injective k[x]/(x²), and
// preserved by l and q on the e3 suite.
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_gorenstein_projectivity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let f = field();
    let resolution = cutoffs().resolution;

    let hereditary = ka2(f).expect("kA₂ builds");
    let report = gorenstein_report(&hereditary, resolution, SEED);
    let mut samples = standard_samples(&hereditary, 5, SEED);
    samples.extend(
        (0..hereditary.idempotents().len()).map(|t| indecomposable_projective(&hereditary, t).0),
    );
    let mut false_branch = false;
    for x in &samples {
        let want = is_projective(x);
        false_branch |= !want;
        match gproj_test(x, &report) {
            Ok(got) if got == want => {}
            Ok(got) => failures.push(format!(
                "kA₂: dim-{} sample: gproj {got} but projective {want}",
                x.dim()
            )),
            Err(e) => failures.push(format!("kA₂: gproj test refused: {e}")),
        }
    }
    if !false_branch {
        failures.push("kA₂: no non-projective sample exercised the negative branch".into());
    }

    let local = dual_numbers(f).expect("dual numbers build");
    let report = gorenstein_report(&local, resolution, SEED);
    for x in standard_samples(&local, 5, SEED) {
        match gproj_test(&x, &report) {
            Ok(true) => {}
            Ok(false) => failures.push(format!(
                "k[x]/(x²): dim-{} sample not Gorenstein-projective over a self-injective algebra",
                x.dim()
            )),
            Err(e) => failures.push(format!("k[x]/(x²): gproj test refused: {e}")),
        }
    }

    let suite = e3_suite(f).expect("curated suite builds");
    let lambda_report = gorenstein_report(&suite.lambda, resolution, SEED);
    let gamma_report = gorenstein_report(&suite.gamma, resolution, SEED);
    let (mut l_images, mut q_images) = (0usize, 0usize);
    for x in standard_samples(&suite.gamma, 5, SEED) {
        if matches!(gproj_test(&x, &gamma_report), Ok(true)) {
            let lx = suite.l(&x).expect("l applies").0;
            l_images += 1;
            if !matches!(gproj_test(&lx, &lambda_report), Ok(true)) {
                failures.push(format!(
                    "e3: l-image of a dim-{} Gorenstein-projective fails membership",
                    x.dim()
                ));
            }
        }
    }
    for y in standard_samples(&suite.lambda, 5, SEED) {
        if matches!(gproj_test(&y, &lambda_report), Ok(true)) {
            let qy = suite.q(&y).expect("q applies").0;
            q_images += 1;
            if !matches!(gproj_test(&qy, &gamma_report), Ok(true)) {
                failures.push(format!(
                    "e3: q-image of a dim-{} Gorenstein-projective fails membership",
                    y.dim()
                ));
            }
        }
    }
    if l_images == 0 || q_images == 0 {
        failures.push(format!("e3: too few images checked (l: {l_images}, q: {q_images})"));
    }
    finish(
        10,
        "Gorenstein projectivity",
        start,
        Duration::from_secs(180),
        failures,
        format!(
            "kA₂ matches projectivity exactly; k[x]/(x²) all-true; e3 l/q images pass ({l_images} and {q_images} checked)"
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 11 — two `verify suite` runs with the same config and seed emit
// byte-identical JSON bundles.
// ---------------------------------------------------------------------------

#[test]
fn criterion_11_suite_bundles_are_byte_identical() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let exe = env!("CARGO_BIN_EXE_cleftlab");
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/curated-suite.json");
    let dir = std::env::temp_dir().join(format!("cleftlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir exists");
    let mut bundles: Vec<Vec<u8>> = Vec::new();
    for run in 0..2 {
        let out = dir.join(format!("bundle-{run}.json"));
        let output = Command::new(exe)
            .args(["verify", "suite", config, "--out"])
            .arg(&out)
            .output()
            .expect("cleftlab binary runs");
        if !output.status.success() {
            failures.push(format!(
                "run {run}: exit {:?}; stderr: {}",
                output.status.code(),
                String::from_utf8_lossy(&output.stderr).trim()
            ));
            continue;
        }
        bundles.push(std::fs::read(&out).expect("bundle was written"));
    }
    if bundles.len() == 2 && bundles[0] != bundles[1] {
        failures.push("the two bundles differ".into());
    }
    let bytes = bundles.first().map_or(0, Vec::len);
    let _ = std::fs::remove_dir_all(&dir);
    finish(
        11,
        "deterministic suite bundles",
        start,
        Duration::from_secs(180),
        failures,
        format!("two curated-suite runs agree to the byte ({bytes} bytes)"),
    );
}
