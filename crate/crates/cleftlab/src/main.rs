//! cleftlab command line.
//!
//! Exit codes, shared by every subcommand: 0 = all checks pass, 1 =
//! property violation (a mathematical claim failed on the input, or an
//! internal soundness guard fired), 2 = input error, 3 = inconclusive
//! (some verdict stayed Unknown within the cutoffs and nothing failed).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cleftlab::algebra::Algebra;
use cleftlab::cleft::{verify_cleft_identities, CleftSuite};
use cleftlab::error::{Error, Result};
use cleftlab::exactlinalg::Fp;
use cleftlab::gorenstein::{
    gorenstein_report, transfer_report, GorensteinReport, TransferReport, TransferVerdict,
};
use cleftlab::homology::{
    ext_dims, injective_dimension, projective_dimension, tor_modules, Dimension,
};
use cleftlab::io::{self, ConstructionManifest, SuiteConfig};
use cleftlab::modules::{random_module, seeded_rng, RightModule};
use cleftlab::perfect::{perfect_report, NilpotencyIndex, PerfectCutoffs, PerfectReport, PerfectVerdict};
use cleftlab::singularity::{ehi_probe, sing_equiv_report, EhiReport, SingEquivReport, SingVerdict};

#[derive(Parser)]
#[command(
    name = "cleftlab",
    version,
    about = "Homological invariants of finite-dimensional algebras over F_p and \
             mechanical verification of cleft-extension transfer theorems"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Field modulus (prime) [default: 101]
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Resolution-length cutoff for pd/id searches [default: 24]
    #[arg(long = "cutoff-res", global = true)]
    cutoff_res: Option<usize>,
    /// Tensor-nilpotency cutoff [default: 16]
    #[arg(long = "cutoff-nilp", global = true)]
    cutoff_nilp: Option<usize>,
    /// Top degree for Ext/Tor windows [default: 8]
    #[arg(long = "ext-window", global = true)]
    ext_window: Option<usize>,
    /// Reproducibility seed; overrides the suite config [default: 49647]
    #[arg(long, global = true, env = "CLEFTLAB_SEED")]
    seed: Option<u64>,
    /// Worker threads for suite cases [default: available parallelism]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report to this path (stdout keeps the text summary)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Json,
    Text,
}

impl GlobalOpts {
    fn field(&self) -> Result<Fp> {
        Fp::new(self.p.unwrap_or(101))
    }

    fn cutoffs(&self) -> PerfectCutoffs {
        PerfectCutoffs {
            nilpotency: self.cutoff_nilp.unwrap_or(16),
            resolution: self.cutoff_res.unwrap_or(24),
            ext_window: self.ext_window.unwrap_or(8),
            seed: self.seed.unwrap_or(io::DEFAULT_SEED),
        }
    }

    /// Emit a report: `--out` always receives the JSON document (stdout
    /// keeps the text summary); without it, `--format` picks the stdout
    /// rendering.
    fn emit(&self, value: &Value, text: &str) -> Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(path) => {
                io::write_json(path, value)?;
                print!("{text}");
            }
            None => match self.format {
                Format::Json => print!("{}", io::to_json_string(value)),
                Format::Text => print!("{text}"),
            },
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate or describe algebras
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Bimodule analyses
    #[command(subcommand)]
    Bimodule(BimoduleCmd),
    /// Build a cleft extension from a construction manifest
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Dimensions and Ext/Tor tables
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Gorenstein invariants and the transfer theorem
    #[command(subcommand)]
    Gorenstein(GorensteinCmd),
    /// Singular-equivalence criterion and Ext-invariance probe
    #[command(subcommand)]
    Singularity(SingularityCmd),
    /// Run verification suites
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Validate an algebra file (or builtin id); violations exit 1
    Check { reference: String },
    /// Summarize an algebra: dimension, radical, idempotents
    Info { reference: String },
}

#[derive(Subcommand)]
enum BimoduleCmd {
    /// Perfectness report: nilpotency, fd/pd, Tor table, condition (R)
    Perfect { reference: String },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Cleft extension Γ ⋉_θ M with a twisting θ
    Theta { manifest: PathBuf },
    /// Trivial extension Γ ⋉ M
    Trivial { manifest: PathBuf },
    /// Truncated tensor ring T_Γ(M) / M^{⊗ ≥ cutoff}
    Tensor { manifest: PathBuf },
    /// Upper triangular matrix ring [A N; 0 B]
    Triangular { manifest: PathBuf },
    /// Morita context ring with zero pairings
    Morita { manifest: PathBuf },
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Projective dimension of a module (or of an algebra's regular module)
    Pd { reference: String },
    /// Injective dimension
    Id { reference: String },
    /// dim Ext^k(X, Y) for k = 0..=ext-window
    Ext { x: String, y: String },
    /// dim Tor_k(X, M) for k = 0..=ext-window, M a bimodule
    Tor { x: String, m: String },
}

#[derive(Subcommand)]
enum GorensteinCmd {
    /// Injective dimensions of the regular module on both sides
    Check { reference: String },
    /// Theorem B(i): Gorenstein transfer for a constructed cleft extension
    Transfer { manifest: PathBuf },
}

#[derive(Subcommand)]
enum SingularityCmd {
    /// Theorem B(ii): singular-equivalence criterion for a cleft extension
    Check {
        manifest: PathBuf,
        /// Seeded random Λ-module samples for the consistency checks
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Compare dim Ext across e on seeded module pairs
    Ehi {
        manifest: PathBuf,
        /// Number of seeded sample pairs
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        /// Lower end of the degree window
        #[arg(long = "from", default_value_t = 0)]
        k0: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every selected check over the cases in a suite config
    Suite { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidAlgebra(_) | Error::SoundnessViolation(_) => 1,
        Error::Inconclusive(_) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Algebra(AlgebraCmd::Check { reference }) => algebra_check(opts, reference),
        Command::Algebra(AlgebraCmd::Info { reference }) => algebra_info(opts, reference),
        Command::Bimodule(BimoduleCmd::Perfect { reference }) => bimodule_perfect(opts, reference),
        Command::Construct(cmd) => {
            let (kind, manifest) = match cmd {
                ConstructCmd::Theta { manifest } => ("theta", manifest),
                ConstructCmd::Trivial { manifest } => ("trivial", manifest),
                ConstructCmd::Tensor { manifest } => ("tensor", manifest),
                ConstructCmd::Triangular { manifest } => ("triangular", manifest),
                ConstructCmd::Morita { manifest } => ("morita", manifest),
            };
            construct(opts, kind, manifest)
        }
        Command::Homology(cmd) => homology(opts, cmd),
        Command::Gorenstein(GorensteinCmd::Check { reference }) => gorenstein_check(opts, reference),
        Command::Gorenstein(GorensteinCmd::Transfer { manifest }) => {
            gorenstein_transfer(opts, manifest)
        }
        Command::Singularity(SingularityCmd::Check { manifest, samples }) => {
            singularity_check(opts, manifest, *samples)
        }
        Command::Singularity(SingularityCmd::Ehi { manifest, pairs, k0 }) => {
            singularity_ehi(opts, manifest, *pairs, *k0)
        }
        Command::Verify(VerifyCmd::Suite { config }) => verify_suite(opts, config),
    }
}

// ---------------------------------------------------------------------------
// Reference helpers

fn manifest_base(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn load_manifest(path: &Path) -> Result<ConstructionManifest> {
    io::read_json(path)
}

fn suite_from_manifest_file(path: &Path, field: Fp) -> Result<CleftSuite> {
    let manifest = load_manifest(path)?;
    io::build_suite(&manifest, &manifest_base(path), field)
}

fn dim_str(d: Dimension) -> String {
    match d {
        Dimension::Finite(n) => n.to_string(),
        Dimension::Infinite => "infinite".into(),
        Dimension::Unknown => "unknown".into(),
    }
}

// ---------------------------------------------------------------------------
// algebra

fn algebra_check(opts: &GlobalOpts, reference: &str) -> Result<u8> {
    let field = opts.field()?;
    let cwd = PathBuf::new();
    // Files are validated from raw data so that every violation is listed;
    // builtin ids were validated when constructed.
    let violations: Vec<String> = if reference.contains('/') || reference.ends_with(".json") {
        let file = io::read_algebra_file(&cwd.join(reference))?;
        let data = io::algebra_data_from_file(&file)?;
        Algebra::validate(&data)?.iter().map(|v| v.to_string()).collect()
    } else {
        let _ = cleftlab::catalog::builtin_algebra(reference, field)?;
        Vec::new()
    };
    let value = json!({"reference": reference, "valid": violations.is_empty(), "violations": violations});
    let text = if violations.is_empty() {
        format!("{reference}: valid")
    } else {
        let mut t = format!("{reference}: {} violation(s)\n", violations.len());
        for v in &violations {
            t.push_str(&format!("  {v}\n"));
        }
        t
    };
    opts.emit(&value, &text)?;
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn algebra_info(opts: &GlobalOpts, reference: &str) -> Result<u8> {
    let field = opts.field()?;
    let a = io::resolve_algebra(reference, &PathBuf::new(), field)?;
    let value = json!({
        "reference": reference,
        "field": {"p": a.field().p()},
        "dim": a.dim(),
        "basis_names": a.basis_names(),
        "radical_dim": a.radical().dim(),
        "idempotents": a.idempotents().len(),
    });
    let text = format!(
        "{reference}: dim {} over F_{}\n  basis: {}\n  radical dim: {}\n  orthogonal idempotents: {}",
        a.dim(),
        a.field().p(),
        a.basis_names().join(", "),
        a.radical().dim(),
        a.idempotents().len(),
    );
    opts.emit(&value, &text)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// bimodule

fn perfect_text(r: &PerfectReport) -> String {
    let s = match r.nilpotency {
        NilpotencyIndex::Within(s) => format!("s = {s}"),
        NilpotencyIndex::NotWithin(c) => format!("not nilpotent within {c} powers"),
    };
    let cond = match r.condition_r.witness {
        None => "holds".into(),
        Some((i, j)) => format!("fails at Tor_{i}(M, M^⊗{j})"),
    };
    let bound = r.vanishing_bound.map_or("-".into(), |n| n.to_string());
    format!(
        "perfectness report\n  nilpotency: {s}\n  fd_left = {}, pd_right = {}\n  condition (R): {cond}\n  vanishing bound n = {bound}\n  verdict: {}",
        dim_str(r.fd_left),
        dim_str(r.pd_right),
        r.verdict,
    )
}

fn bimodule_perfect(opts: &GlobalOpts, reference: &str) -> Result<u8> {
    let field = opts.field()?;
    let m = io::resolve_bimodule(reference, &PathBuf::new(), field)?;
    let report = perfect_report(&m, &opts.cutoffs());
    opts.emit(&io::perfect_json(&report), &perfect_text(&report))?;
    Ok(match report.verdict {
        PerfectVerdict::Unknown(_) => 3,
        _ => 0,
    })
}

// ---------------------------------------------------------------------------
// construct

fn construct(opts: &GlobalOpts, kind: &str, manifest_path: &Path) -> Result<u8> {
    let field = opts.field()?;
    let manifest = load_manifest(manifest_path)?;
    if manifest.construct != kind {
        return Err(Error::InputError(format!(
            "manifest declares construct {:?} but the subcommand is {kind:?}",
            manifest.construct
        )));
    }
    let suite = io::build_suite(&manifest, &manifest_base(manifest_path), field)?;
    let value = json!({
        "lambda": serde_json::to_value(io::algebra_to_file(&suite.lambda)).expect("serializable"),
        "descriptor": serde_json::to_value(io::suite_descriptor(&suite)).expect("serializable"),
    });
    let text = format!(
        "constructed Λ of dim {} over F_{} ({kind} extension of Γ dim {} by M dim {})",
        suite.lambda.dim(),
        field.p(),
        suite.gamma.dim(),
        suite.m.dim(),
    );
    opts.emit(&value, &text)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// homology

fn homology(opts: &GlobalOpts, cmd: &HomologyCmd) -> Result<u8> {
    let field = opts.field()?;
    let cwd = PathBuf::new();
    let cutoffs = opts.cutoffs();
    match cmd {
        HomologyCmd::Pd { reference } => {
            let m = io::resolve_module(reference, &cwd, field)?;
            let pd = projective_dimension(&m, cutoffs.resolution, cutoffs.seed);
            opts.emit(&json!({"pd": io::dimension_json(pd)}), &format!("pd = {}", dim_str(pd)))?;
            Ok(if pd == Dimension::Unknown { 3 } else { 0 })
        }
        HomologyCmd::Id { reference } => {
            let m = io::resolve_module(reference, &cwd, field)?;
            let id = injective_dimension(&m, cutoffs.resolution, cutoffs.seed);
            opts.emit(&json!({"id": io::dimension_json(id)}), &format!("id = {}", dim_str(id)))?;
            Ok(if id == Dimension::Unknown { 3 } else { 0 })
        }
        HomologyCmd::Ext { x, y } => {
            let x = io::resolve_module(x, &cwd, field)?;
            let y = io::resolve_module(y, &cwd, field)?;
            if !Algebra::compatible(x.algebra(), y.algebra()) {
                return Err(Error::InputError("Ext requires modules over the same algebra".into()));
            }
            let dims = ext_dims(&x, &y, cutoffs.ext_window);
            let listing =
                dims.iter().enumerate().map(|(k, d)| format!("  dim Ext^{k} = {d}")).collect::<Vec<_>>();
            opts.emit(&json!({"dims": dims}), &listing.join("\n"))?;
            Ok(0)
        }
        HomologyCmd::Tor { x, m } => {
            let x = io::resolve_module(x, &cwd, field)?;
            let m = io::resolve_bimodule(m, &cwd, field)?;
            let tors = tor_modules(&x, &m, cutoffs.ext_window)?;
            let dims: Vec<usize> = tors.iter().map(RightModule::dim).collect();
            let listing =
                dims.iter().enumerate().map(|(k, d)| format!("  dim Tor_{k} = {d}")).collect::<Vec<_>>();
            opts.emit(&json!({"dims": dims}), &listing.join("\n"))?;
            Ok(0)
        }
    }
}

// ---------------------------------------------------------------------------
// gorenstein

fn gorenstein_text(r: &GorensteinReport) -> String {
    format!(
        "id_right = {}, id_left = {}; silp proxy = {}, spli proxy = {}; verdict: {}",
        dim_str(r.id_right),
        dim_str(r.id_left),
        dim_str(r.silp_proxy),
        dim_str(r.spli_proxy),
        r.verdict,
    )
}

fn gorenstein_check(opts: &GlobalOpts, reference: &str) -> Result<u8> {
    let field = opts.field()?;
    let a = io::resolve_algebra(reference, &PathBuf::new(), field)?;
    let cutoffs = opts.cutoffs();
    let report = gorenstein_report(&a, cutoffs.resolution, cutoffs.seed);
    opts.emit(&io::gorenstein_json(&report), &gorenstein_text(&report))?;
    Ok(match report.verdict {
        cleftlab::gorenstein::GorensteinVerdict::Unknown => 3,
        _ => 0,
    })
}

fn chain_str(chain: Option<[usize; 3]>) -> String {
    match chain {
        Some([lo, mid, hi]) => format!("{lo} ≤ {mid} ≤ {hi}"),
        None => "-".into(),
    }
}

fn transfer_text(r: &TransferReport) -> String {
    let mut t = String::from("Theorem B(i) — Gorenstein transfer\n");
    t.push_str(&format!("  perfect bimodule: {}", r.perfect.verdict));
    if let (Some(s), Some(n)) = (r.s, r.n) {
        t.push_str(&format!(" (s = {s}, n = {n}"));
        match r.n_prime {
            Some(np) => t.push_str(&format!(", n' = {np})")),
            None => t.push_str(")"),
        }
    }
    t.push('\n');
    t.push_str(&format!("  Γ: {}\n", gorenstein_text(&r.gamma_report)));
    t.push_str(&format!("  Λ: {}\n", gorenstein_text(&r.lambda_report)));
    let bicond = match r.biconditional {
        Some(true) => "holds",
        Some(false) => "VIOLATED",
        None => "-",
    };
    t.push_str(&format!("  Γ Gorenstein ⟺ Λ Gorenstein: {bicond}\n"));
    t.push_str(&format!("  silp chain: {}\n", chain_str(r.silp_chain)));
    t.push_str(&format!("  spli chain: {}\n", chain_str(r.spli_chain)));
    t.push_str(&format!("  verdict: {}", r.verdict));
    t
}

fn gorenstein_transfer(opts: &GlobalOpts, manifest: &Path) -> Result<u8> {
    let field = opts.field()?;
    let suite = suite_from_manifest_file(manifest, field)?;
    let report = transfer_report(&suite, &opts.cutoffs());
    opts.emit(&io::transfer_json(&report), &transfer_text(&report))?;
    Ok(match report.verdict {
        TransferVerdict::Pass | TransferVerdict::NotApplicable(_) => 0,
        TransferVerdict::Fail(_) => 1,
        TransferVerdict::Inconclusive(_) => 3,
    })
}

// ---------------------------------------------------------------------------
// singularity

fn lambda_samples(suite: &CleftSuite, extra: usize, seed: u64) -> Vec<RightModule> {
    let mut samples: Vec<RightModule> = (0..suite.lambda.idempotents().len())
        .map(|t| RightModule::simple(suite.lambda.clone(), t))
        .collect();
    samples.push(RightModule::regular(suite.lambda.clone()));
    let mut rng = seeded_rng(seed);
    for _ in 0..extra {
        samples.push(random_module(&suite.lambda, &mut rng, 3));
    }
    samples
}

fn sing_text(r: &SingEquivReport) -> String {
    let mut t = String::from("Theorem B(ii) — singular equivalence criterion\n");
    t.push_str(&format!("  criterion: {}\n", r.criterion));
    if let Some(lsgf) = &r.lsgf {
        let guard: &str = match lsgf.guard {
            Some(true) => "10 random Γ-modules consistent",
            Some(false) => "GUARD FAILED",
            None => "inconclusive on random Γ-modules",
        };
        t.push_str(&format!("  vanishing bound: degrees 0..={}\n  guard: {guard}\n", lsgf.bound));
    }
    for check in &r.consistency_checks {
        let mark = if check.passed { "pass" } else { "FAIL" };
        t.push_str(&format!("  consistency [{mark}] {}: {}\n", check.name, check.detail));
    }
    let bicond = match r.gldim_biconditional {
        Some(true) => "holds",
        Some(false) => "VIOLATED",
        None => "-",
    };
    t.push_str(&format!("  gldim(Λ) < ∞ ⟺ gldim(Γ) < ∞: {bicond}\n"));
    t.push_str(&format!("  conclusion: {}\n", r.conclusion));
    t.push_str(&format!("  verdict: {}", r.verdict));
    t
}

fn sing_exit(verdict: &SingVerdict) -> u8 {
    match verdict {
        SingVerdict::Pass | SingVerdict::NotApplicable(_) => 0,
        SingVerdict::Fail(_) => 1,
        SingVerdict::Inconclusive(_) => 3,
    }
}

fn singularity_check(opts: &GlobalOpts, manifest: &Path, samples: usize) -> Result<u8> {
    let field = opts.field()?;
    let suite = suite_from_manifest_file(manifest, field)?;
    let cutoffs = opts.cutoffs();
    let perfect = perfect_report(&suite.m, &cutoffs);
    let samples = lambda_samples(&suite, samples, cutoffs.seed);
    let report = sing_equiv_report(&suite, &perfect, &samples, &cutoffs)?;
    opts.emit(&io::sing_json(&report), &sing_text(&report))?;
    Ok(sing_exit(&report.verdict))
}

fn seeded_pairs(suite: &CleftSuite, count: usize, seed: u64) -> Vec<(RightModule, RightModule)> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            (random_module(&suite.lambda, &mut rng, 3), random_module(&suite.lambda, &mut rng, 3))
        })
        .collect()
}

fn ehi_text(r: &EhiReport) -> String {
    let mut t = format!(
        "Ext-invariance probe: {} pair(s), degrees {}..={}\n",
        r.pairs.len(),
        r.window.0,
        r.window.1
    );
    match r.threshold {
        Some(thr) => t.push_str(&format!("  certified threshold: agreement from degree {thr}\n")),
        None => t.push_str("  no certified threshold (bimodule not certified perfect)\n"),
    }
    let agree_froms: Option<Vec<usize>> = r.pairs.iter().map(|p| p.agree_from).collect();
    match agree_froms.as_deref() {
        Some([]) => {}
        Some(ks) => t.push_str(&format!(
            "  observed agreement from degree ≤ {} on every pair\n",
            ks.iter().max().expect("nonempty")
        )),
        None => t.push_str("  some pair disagrees at the top degree\n"),
    }
    let agrees = match r.agrees_beyond_threshold {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    };
    t.push_str(&format!("  agrees beyond threshold: {agrees}"));
    t
}

fn singularity_ehi(opts: &GlobalOpts, manifest: &Path, pairs: usize, k0: usize) -> Result<u8> {
    let field = opts.field()?;
    let suite = suite_from_manifest_file(manifest, field)?;
    let cutoffs = opts.cutoffs();
    let perfect = perfect_report(&suite.m, &cutoffs);
    let pairs = seeded_pairs(&suite, pairs, cutoffs.seed);
    let report = ehi_probe(&suite, &pairs, (k0, cutoffs.ext_window), &perfect, &cutoffs)?;
    opts.emit(&io::ehi_json(&report), &ehi_text(&report))?;
    Ok(match report.agrees_beyond_threshold {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    })
}

// ---------------------------------------------------------------------------
// verify suite

struct CaseOutcome {
    id: String,
    json: Value,
    summary: String,
    failures: Vec<String>,
    unknowns: Vec<String>,
}

fn verify_suite(opts: &GlobalOpts, config_path: &Path) -> Result<u8> {
    let config: SuiteConfig = io::read_json(config_path)?;
    config.validate()?;
    if let Some(p) = opts.p {
        if p != config.p {
            return Err(Error::InputError(format!(
                "--p {p} conflicts with config p = {}",
                config.p
            )));
        }
    }
    let field = Fp::new(config.p)?;
    let seed = opts.seed.unwrap_or(config.seed);
    let cutoffs = PerfectCutoffs {
        nilpotency: opts.cutoff_nilp.unwrap_or(config.cutoffs.nilpotency),
        resolution: opts.cutoff_res.unwrap_or(config.cutoffs.resolution),
        ext_window: opts.ext_window.unwrap_or(config.cutoffs.ext_window),
        seed,
    };
    let base = manifest_base(config_path);
    let jobs = opts
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);

    let mut outcomes = run_cases(&config, &base, field, &cutoffs, jobs)?;
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));

    let mut failures = 0usize;
    let mut unknowns = 0usize;
    let mut case_values = Vec::new();
    let mut summary = format!(
        "cleftlab verify suite — {} case(s), p = {}, seed = {seed}, checks: {}\n",
        outcomes.len(),
        config.p,
        config.checks.join(", "),
    );
    for outcome in &outcomes {
        failures += outcome.failures.len();
        unknowns += outcome.unknowns.len();
        case_values.push(outcome.json.clone());
        summary.push_str(&outcome.summary);
    }
    let verdict =
        if failures > 0 { "fail" } else if unknowns > 0 { "inconclusive" } else { "pass" };
    let passed = outcomes.iter().filter(|o| o.failures.is_empty() && o.unknowns.is_empty()).count();
    summary.push_str(&format!(
        "suite verdict: {} ({passed}/{} cases clean, {failures} failure(s), {unknowns} unknown(s))\n",
        verdict.to_uppercase(),
        outcomes.len(),
    ));

    let bundle = json!({
        "config": {
            "p": config.p,
            "cutoffs": {
                "resolution": cutoffs.resolution,
                "nilpotency": cutoffs.nilpotency,
                "ext_window": cutoffs.ext_window,
            },
            "seed": seed,
            "checks": config.checks,
        },
        "cases": case_values,
        "verdict": verdict,
    });

    match &opts.out {
        Some(path) => {
            io::write_json(path, &bundle)?;
            print!("{summary}");
        }
        None => match opts.format {
            Format::Json => print!("{}", io::to_json_string(&bundle)),
            Format::Text => print!("{summary}"),
        },
    }
    Ok(if failures > 0 { 1 } else if unknowns > 0 { 3 } else { 0 })
}

fn run_cases(
    config: &SuiteConfig,
    base: &Path,
    field: Fp,
    cutoffs: &PerfectCutoffs,
    jobs: usize,
) -> Result<Vec<CaseOutcome>> {
    let n = config.cases.len();
    let slots: Vec<Mutex<Option<Result<CaseOutcome>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(n.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let case = &config.cases[i];
                let result = run_case(case, base, config, field, cutoffs);
                *slots[i].lock().expect("slot lock") = Some(result);
            });
        }
    });
    let mut outcomes = Vec::with_capacity(n);
    for slot in slots {
        outcomes.push(slot.into_inner().expect("slot lock").expect("worker filled slot")?);
    }
    Ok(outcomes)
}

fn selected(config: &SuiteConfig, check: &str) -> bool {
    config.checks.iter().any(|c| c == check)
}

fn run_case(
    case: &io::SuiteCase,
    base: &Path,
    config: &SuiteConfig,
    field: Fp,
    cutoffs: &PerfectCutoffs,
) -> Result<CaseOutcome> {
    let id = case.id.clone();
    let (manifest, case_base) = match (&case.manifest, &case.path) {
        (Some(m), None) => (m.clone(), base.to_path_buf()),
        (None, Some(p)) => {
            let path = base.join(p);
            (load_manifest(&path)?, manifest_base(&path))
        }
        _ => unreachable!("config.validate() enforces exactly one source"),
    };

    let mut stages = serde_json::Map::new();
    let mut failures: Vec<String> = Vec::new();
    let mut unknowns: Vec<String> = Vec::new();
    let mut lines: Vec<String> = Vec::new();

    // Validation stage: constructor errors that are table violations are
    // case failures; anything else (unreadable files, bad references) is a
    // genuine input error and aborts the run.
    let suite = match io::build_suite(&manifest, &case_base, field) {
        Ok(suite) => suite,
        Err(Error::InvalidAlgebra(msg)) => {
            stages.insert("validation".into(), json!({"passed": false, "violations": msg}));
            failures.push(format!("validation: {msg}"));
            lines.push(format!("  validation: FAIL — {msg}"));
            return Ok(finish_case(id, stages, failures, unknowns, lines));
        }
        Err(e) => return Err(e),
    };
    stages.insert(
        "validation".into(),
        json!({
            "passed": true,
            "lambda_dim": suite.lambda.dim(),
            "gamma_dim": suite.gamma.dim(),
            "m_dim": suite.m.dim(),
        }),
    );
    lines.push(format!(
        "  validation: ok (Λ dim {}, Γ dim {}, M dim {})",
        suite.lambda.dim(),
        suite.gamma.dim(),
        suite.m.dim()
    ));

    let perfect = perfect_report(&suite.m, cutoffs);
    if selected(config, "perfect") {
        stages.insert("perfect".into(), io::perfect_json(&perfect));
        if let PerfectVerdict::Unknown(reason) = &perfect.verdict {
            unknowns.push(format!("{id}: perfect: {reason}"));
        }
        lines.push(format!(
            "  perfect: {} (fd_left = {}, pd_right = {})",
            perfect.verdict,
            dim_str(perfect.fd_left),
            dim_str(perfect.pd_right)
        ));
    }

    if selected(config, "identities") {
        let samples = lambda_samples(&suite, 3, cutoffs.seed);
        let max_n = match perfect.nilpotency {
            NilpotencyIndex::Within(s) => s.max(1),
            NilpotencyIndex::NotWithin(_) => 2,
        };
        let verification = verify_cleft_identities(&suite, &samples, max_n)?;
        stages.insert("identities".into(), io::verification_json(&verification));
        let total = verification.checks.len();
        let ok = verification.checks.iter().filter(|c| c.passed).count();
        for check in verification.checks.iter().filter(|c| !c.passed) {
            failures.push(format!("{id}: identities: {}: {}", check.name, check.detail));
        }
        lines.push(format!("  cleft identities: {ok}/{total} hold (functor powers ≤ {max_n})"));
    }

    if selected(config, "transfer") {
        let report = transfer_report(&suite, cutoffs);
        stages.insert("transfer".into(), io::transfer_json(&report));
        let line = match &report.verdict {
            TransferVerdict::Pass => format!(
                "  Theorem B(i): PASS — biconditional holds; silp {}, spli {}",
                chain_str(report.silp_chain),
                chain_str(report.spli_chain)
            ),
            TransferVerdict::Fail(msg) => {
                failures.push(format!("{id}: Theorem B(i): {msg}"));
                format!("  Theorem B(i): FAIL — {msg}")
            }
            TransferVerdict::NotApplicable(msg) => {
                format!("  Theorem B(i): not applicable — {msg}")
            }
            TransferVerdict::Inconclusive(msg) => {
                unknowns.push(format!("{id}: Theorem B(i): {msg}"));
                format!("  Theorem B(i): inconclusive — {msg}")
            }
        };
        lines.push(line);
    }

    if selected(config, "singularity") {
        let samples = lambda_samples(&suite, 20, cutoffs.seed);
        match sing_equiv_report(&suite, &perfect, &samples, cutoffs) {
            Ok(report) => {
                stages.insert("singularity".into(), io::sing_json(&report));
                let line = match &report.verdict {
                    SingVerdict::Pass => format!("  Theorem B(ii): PASS — {}", report.conclusion),
                    SingVerdict::Fail(msg) => {
                        failures.push(format!("{id}: Theorem B(ii): {msg}"));
                        format!("  Theorem B(ii): FAIL — {msg}")
                    }
                    SingVerdict::NotApplicable(msg) => {
                        format!("  Theorem B(ii): not applicable — {msg}")
                    }
                    SingVerdict::Inconclusive(msg) => {
                        unknowns.push(format!("{id}: Theorem B(ii): {msg}"));
                        format!("  Theorem B(ii): inconclusive — {msg}")
                    }
                };
                lines.push(line);
            }
            Err(Error::SoundnessViolation(msg)) => {
                stages.insert("singularity".into(), json!({"soundness_violation": msg}));
                failures.push(format!("{id}: Theorem B(ii): soundness violation: {msg}"));
                lines.push(format!("  Theorem B(ii): SOUNDNESS VIOLATION — {msg}"));
            }
            Err(e) => return Err(e),
        }
    }

    if selected(config, "ehi") {
        let pairs = seeded_pairs(&suite, 20, cutoffs.seed);
        let report = ehi_probe(&suite, &pairs, (0, cutoffs.ext_window), &perfect, cutoffs)?;
        stages.insert("ehi".into(), io::ehi_json(&report));
        let line = match (report.threshold, report.agrees_beyond_threshold) {
            (Some(thr), Some(true)) => {
                format!("  EHI probe: agreement from degree {thr} on {} pairs", report.pairs.len())
            }
            (Some(thr), _) => {
                failures.push(format!(
                    "{id}: EHI: some pair disagrees beyond the certified threshold {thr}"
                ));
                format!("  EHI probe: FAIL — disagreement beyond degree {thr}")
            }
            (None, _) => "  EHI probe: no certified threshold (recorded, not scored)".to_string(),
        };
        lines.push(line);
    }

    Ok(finish_case(id, stages, failures, unknowns, lines))
}

fn finish_case(
    id: String,
    stages: serde_json::Map<String, Value>,
    failures: Vec<String>,
    unknowns: Vec<String>,
    lines: Vec<String>,
) -> CaseOutcome {
    let verdict = if !failures.is_empty() {
        "fail"
    } else if !unknowns.is_empty() {
        "inconclusive"
    } else {
        "pass"
    };
    let mut summary = format!("case {id}: {}\n", verdict.to_uppercase());
    for line in &lines {
        summary.push_str(line);
        summary.push('\n');
    }
    let json = json!({
        "id": id,
        "stages": Value::Object(stages),
        "failures": failures,
        "unknowns": unknowns,
        "verdict": verdict,
    });
    CaseOutcome { id, json, summary, failures, unknowns }
}
