use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclic_covers::cohomology::derham_basis;
use cyclic_covers::report::{
    checks_table, curve_section, render_derham, render_h1, render_omega, report_document, BasesSection, CurveSection,
    ReportDocument,
};
use cyclic_covers::spec::CurveSpecFile;
use cyclic_covers::sweep::{run_sweep, SweepFamily, SweepParams, SweepSummary};
use cyclic_covers::{full_report, BasisOptions, Cover, Curve, KummerSplit, MuRange, SignConvention};

/// Cohomology bases and duality checks for Kummer and Artin-Schreier covers
/// of the projective line.
#[derive(Parser)]
#[command(name = "cyclic-covers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, ramification data and the mu-table of a curve.
    Info {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Render one of the constructed bases.
    Basis {
        path: PathBuf,
        which: Which,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every check on a curve; exits 1 if any of them fails.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Verify every curve of a bounded family.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Omega,
    H1,
    Derham,
}

#[derive(Clone, Copy, ValueEnum)]
enum RangeArg {
    Paper,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Paper,
    NegatedInfty,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Paper,
    Lowered,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Kummer,
    ArtinSchreier,
}

#[derive(Args)]
struct PolicyArgs {
    /// Which mu contribute basis elements.
    #[arg(long, value_enum, default_value = "extended")]
    mu_range: RangeArg,
    /// Sign of the omega_inf slot of the a classes.
    #[arg(long, value_enum, default_value = "negated-infty")]
    sign: SignArg,
    /// Where the Kummer psi polynomial is cut between the two slots.
    #[arg(long, value_enum, default_value = "lowered")]
    kummer_split: SplitArg,
}

impl PolicyArgs {
    fn options(&self) -> BasisOptions {
        BasisOptions {
            mu_range: match self.mu_range {
                RangeArg::Paper => MuRange::Paper,
                RangeArg::Extended => MuRange::Extended,
            },
            sign: match self.sign {
                SignArg::Paper => SignConvention::Paper,
                SignArg::NegatedInfty => SignConvention::NegatedInfty,
            },
            kummer_split: match self.kummer_split {
                SplitArg::Paper => KummerSplit::Paper,
                SplitArg::Lowered => KummerSplit::Lowered,
            },
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "kummer")]
    family: FamilyArg,
    /// Largest characteristic.
    #[arg(long)]
    p_max: Option<u64>,
    /// Largest Kummer degree.
    #[arg(long)]
    n_max: Option<u32>,
    /// Kummer: largest total degree. Artin-Schreier: largest exponent per point.
    #[arg(long)]
    l_max: Option<u32>,
    /// Largest number of branch points.
    #[arg(long)]
    r_max: Option<usize>,
    /// Keep at most this many curves.
    #[arg(long)]
    count_cap: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    policy: PolicyArgs,
    #[arg(long)]
    json: bool,
}

impl SweepArgs {
    fn params(&self) -> SweepParams {
        let mut p = match self.family {
            FamilyArg::Kummer => SweepParams::kummer(),
            FamilyArg::ArtinSchreier => SweepParams::artin_schreier(),
        };
        p.p_max = self.p_max.unwrap_or(p.p_max);
        p.n_max = self.n_max.unwrap_or(p.n_max);
        p.l_max = self.l_max.unwrap_or(p.l_max);
        p.r_max = self.r_max.unwrap_or(p.r_max);
        p.count_cap = self.count_cap.unwrap_or(p.count_cap);
        p.seed = self.seed.unwrap_or(p.seed);
        p.options = self.policy.options();
        p
    }
}

/// Input problems, reported with exit code 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.into())
    }
}

fn load(path: &Path) -> Result<Curve, InputError> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let curve =
        CurveSpecFile::parse(&text).and_then(|spec| spec.to_curve()).with_context(|| format!("{}", path.display()))?;
    let violations = curve.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {}: {}", v.code.as_str(), v.message)).collect();
        return Err(anyhow!("{}: invalid curve\n{}", path.display(), lines.join("\n")).into());
    }
    Ok(curve)
}

fn cover_of(curve: &Curve) -> Result<std::sync::Arc<Cover>, InputError> {
    Ok(Cover::new(curve.clone())?)
}

fn info_text(section: &CurveSection, cover: &Cover) -> String {
    let field = cover.field();
    let mut out = String::new();
    let _ = writeln!(out, "curve   {}", section.input.to_json());
    let _ = writeln!(out, "field   F_{}", field.order());
    let _ = writeln!(out, "genus   {}", cover.genus_rh());
    let _ =
        writeln!(out, "\nbranch points\n  {:>3}  {:<12} {:>3} {:>3} {:>3} {:>6}", "i", "rho", "l", "e", "g", "lambda");
    for (i, (b, r)) in cover.branch().iter().zip(&cover.ram_data().branch).enumerate() {
        let lambda = r.lambda.map_or("-".to_string(), |v| v.to_string());
        let _ =
            writeln!(out, "  {:>3}  {:<12} {:>3} {:>3} {:>3} {:>6}", i + 1, field.render(b.rho), b.l, r.e, r.g, lambda);
    }
    if let Some(zero) = &section.zero {
        let l0 = zero.l0.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "\nover 0: l0 {l0}, e0 {}, g0 {}", zero.e0, zero.g0);
    }
    if let Some(k) = section.points_over_infinity {
        let _ = writeln!(out, "points over infinity: {k}");
    }
    let _ = writeln!(out, "\nmu table\n  {:>3}  {:<16} {:<16} {:>3}  g", "mu", "m", "upsilon", "t");
    for row in &section.mu_table {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let _ =
            writeln!(out, "  {:>3}  {:<16} {:<16} {:>3}  {}", row.mu, list(&row.m), list(&row.upsilon), row.t, row.g);
    }
    out
}

fn info(path: &Path, json: bool) -> Result<ExitCode, InputError> {
    let curve = load(path)?;
    let cover = cover_of(&curve)?;
    let section = curve_section(&curve, Some(&cover));
    if json {
        let doc = ReportDocument {
            curve: section,
            bases: None,
            pairing_matrix: None,
            checks: None,
            policy: None,
            all_pass: None,
        };
        println!("{}", doc.to_json());
    } else {
        print!("{}", info_text(&section, &cover));
    }
    Ok(ExitCode::SUCCESS)
}

fn basis(path: &Path, which: Which, options: BasisOptions, json: bool) -> Result<ExitCode, InputError> {
    let curve = load(path)?;
    let cover = cover_of(&curve)?;
    let mut bases = BasesSection::default();
    match which {
        Which::Omega => bases.omega = Some(render_omega(&cover, options)),
        Which::H1 => bases.h1 = Some(render_h1(&cover, options)),
        Which::Derham => bases.derham = Some(render_derham(&derham_basis(&cover, options))),
    }
    if json {
        let doc = ReportDocument {
            curve: curve_section(&curve, Some(&cover)),
            bases: Some(bases),
            pairing_matrix: None,
            checks: None,
            policy: Some(options.into()),
            all_pass: None,
        };
        println!("{}", doc.to_json());
        return Ok(ExitCode::SUCCESS);
    }
    for item in bases.omega.iter().chain(&bases.h1).flatten() {
        println!("{} = {}", item.label, item.value);
    }
    for t in bases.derham.iter().flatten() {
        println!("{}", t.label);
        println!("  omega_0   = {}", t.omega0);
        println!("  omega_inf = {}", t.omega_inf);
        println!("  f         = {}", t.f);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &Path, options: BasisOptions, json: bool) -> Result<ExitCode, InputError> {
    let curve = load(path)?;
    let report = full_report(&curve, options);
    if json {
        println!("{}", report_document(&report).to_json());
    } else {
        print!("{}", checks_table(&report.checks));
        let failed = report.failing().count();
        if failed == 0 {
            println!("all {} checks pass", report.checks.len());
        } else {
            println!("{failed} of {} checks did not pass", report.checks.len());
        }
    }
    Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep_text(s: &SweepSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} curves, {} pass, {} fail", s.curves, s.passed, s.failed);
    for f in &s.failures {
        let _ = writeln!(out, "#{} [{}] {}", f.index, f.failing.join(", "), f.spec.to_json());
    }
    out
}

fn sweep(args: &SweepArgs) -> Result<ExitCode, InputError> {
    let params = args.params();
    params.check_bounds().map_err(|e| anyhow!(e))?;
    if args.jobs == 0 {
        return Err(anyhow!("jobs must be at least 1").into());
    }
    let summary = run_sweep(&params, args.jobs);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        let family = match summary.family {
            SweepFamily::Kummer => "kummer",
            SweepFamily::ArtinSchreier => "artin-schreier",
        };
        print!("{family} sweep, seed {}: {}", summary.seed, sweep_text(&summary));
    }
    Ok(if summary.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Info { path, json } => info(path, *json),
        Command::Basis { path, which, policy, json } => basis(path, *which, policy.options(), *json),
        Command::Verify { path, policy, json } => verify(path, policy.options(), *json),
        Command::Sweep(args) => sweep(args),
    };
    result.unwrap_or_else(|InputError(e)| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
