use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use qltclab_core::analysis::{
    locality_profile, standard_suite, sweep_cells, verify, Family, Grid, Instance, Statement, SweepRow,
    VerificationReport,
};
use qltclab_core::catalog::NamedCode;
use qltclab_core::codes::{ClassicalCode, CssCode, Limits, SoundnessInterval, SoundnessMethod};
use qltclab_core::homology::RepetitionVariant;
use rayon::prelude::*;

use crate::alist::to_alist;
use crate::bundle::{BundleReport, CodeBundle, Matrices, Metadata};
use crate::error::{CliError, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
use crate::output::{report_json, write_sweep_csv};

/// Builds and checks CSS codes, check products and distance-balanced codes.
#[derive(Debug, Parser)]
#[command(name = "qltclab", version)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of steps an exhaustive search may take.
    #[arg(long, global = true, env = "QLTC_CAP")]
    pub cap: Option<u64>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write it as a bundle.
    Construct(ConstructArgs),
    /// Measure distance, soundness or locality of a bundled code.
    Analyze(AnalyzeArgs),
    /// Check statements on built-in instances.
    Verify(VerifyArgs),
    /// Measure a family over a parameter grid.
    Sweep(SweepArgs),
    /// Write the matrices of a bundle in another format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructFamily {
    /// The classical code ker(H).
    Code,
    Duplicate,
    Gauge,
    Balanced,
    Nested,
    CheckProduct,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub family: ConstructFamily,
    /// Named classical code: rep<N>, hamming7 or random:n=K:seed=S.
    #[arg(long)]
    pub h: Option<String>,
    /// Length of the repetition code, at least 2.
    #[arg(long, value_parser = parse_ell)]
    pub ell: Option<u64>,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<RepetitionVariant>,
    /// Block length of a nested code.
    #[arg(long)]
    pub n: Option<u64>,
    /// Named CSS code: css422, dup:<code>, gauge:<code> or nested:n=N:seed=S.
    #[arg(long)]
    pub q: Option<String>,
    /// Named classical code for the check product.
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_ell(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(ell) if ell >= 2 => Ok(ell),
        Ok(ell) => Err(format!("ell must be at least 2, got {ell}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_variant(s: &str) -> Result<RepetitionVariant, String> {
    s.parse().map_err(|e: qltclab_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SoundnessMode {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub bundle: PathBuf,
    #[arg(long)]
    pub distance: bool,
    #[arg(long)]
    pub soundness: Option<SoundnessMode>,
    #[arg(long)]
    pub locality: bool,
    /// Random words tried by sampled soundness.
    #[arg(long, default_value_t = 4096)]
    pub trials: usize,
    /// Store the measurements in the bundle.
    #[arg(long)]
    pub save: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Standard,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A statement id or `all`.
    pub statement: String,
    #[arg(long, value_enum, default_value_t = Corpus::Standard)]
    pub corpus: Corpus,
    /// Check one instance instead of the corpus, e.g. `rep3*hamming7`.
    #[arg(long)]
    pub instance: Option<String>,
    /// One JSON object per line.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    /// `key=v1,v2;key2=w1`.
    #[arg(long)]
    pub grid: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: qltclab_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Alist,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub bundle: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    /// Write `<name>.alist` files here instead of standard output.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.exit_code() == EXIT_USAGE {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let limits = Limits {
        cap: cli.cap.unwrap_or(Limits::DEFAULT_CAP),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", cli.threads)))?;
    match &cli.command {
        Command::Construct(a) => construct(a, cli.seed, &limits, out),
        Command::Analyze(a) => analyze(a, cli.seed, &limits, out),
        Command::Verify(a) => verify_command(a, cli.seed, &limits, &pool, out, err),
        Command::Sweep(a) => sweep_command(a, &limits, &pool, out, err),
        Command::Export(a) => export(a, out),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn construct(a: &ConstructArgs, seed: u64, limits: &Limits, out: &mut dyn Write) -> Result<i32, CliError> {
    let given: Vec<(&str, Option<String>)> = vec![
        ("h", a.h.clone()),
        ("ell", a.ell.map(|v| v.to_string())),
        ("variant", a.variant.map(|v| v.to_string())),
        ("n", a.n.map(|v| v.to_string())),
        ("q", a.q.clone()),
        ("c", a.c.clone()),
    ];
    let (family, keys): (Option<Family>, &[&str]) = match a.family {
        ConstructFamily::Code => (None, &["h"]),
        ConstructFamily::Duplicate => (Some(Family::Duplicate), &["h"]),
        ConstructFamily::Gauge => (Some(Family::Gauge), &["h"]),
        ConstructFamily::Balanced => (Some(Family::Balanced), &["h", "ell", "variant"]),
        ConstructFamily::Nested => (Some(Family::Nested), &["n"]),
        ConstructFamily::CheckProduct => (Some(Family::CheckProduct), &["q", "c"]),
    };
    let name = a.family.to_possible_value().expect("no skipped variants").get_name().to_string();
    if let Some((k, _)) = given.iter().find(|(k, v)| v.is_some() && !keys.contains(k)) {
        return Err(usage(format!("--{k} does not apply to {name}")));
    }
    let mut axes = Vec::new();
    for (k, v) in &given {
        match v {
            Some(v) => axes.push(format!("{k}={v}")),
            None if *k == "variant" => {}
            None if keys.contains(k) => return Err(usage(format!("{name} needs --{k}"))),
            None => {}
        }
    }
    if a.family == ConstructFamily::Nested {
        axes.push(format!("seed={seed}"));
    }

    let bundle = match family {
        None => {
            let h = a.h.as_deref().expect("checked above").parse::<NamedCode>()?.checks()?;
            CodeBundle::classical(Metadata::new(name, axes.join(";"), seed), &ClassicalCode::new(h))
        }
        Some(family) => {
            let grid: Grid = axes.join(";").parse()?;
            let cell = sweep_cells(family, &grid)?.pop().expect("one cell");
            let code = cell.build(limits)?;
            CodeBundle::css(Metadata::new(name, cell.params.clone(), seed), &code)
        }
    };
    bundle.save(&a.out)?;
    writeln!(out, "wrote {} ({} bits) to {}", bundle.metadata.construction, bundle.n(), a.out.display())?;
    Ok(0)
}

fn analyze(a: &AnalyzeArgs, seed: u64, limits: &Limits, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut bundle = CodeBundle::load(&a.bundle)?;
    let nothing_chosen = !a.distance && !a.locality && a.soundness.is_none();
    let mut reports = Vec::new();

    match &bundle.matrices {
        Matrices::Classical(h) => {
            let code = ClassicalCode::new(h.clone());
            writeln!(out, "n {} k {}", code.n(), code.dimension())?;
            if a.distance || nothing_chosen {
                reports.push(BundleReport::Distance {
                    label: "d".into(),
                    value: code.distance(limits)?,
                });
            }
            if let Some(mode) = a.soundness {
                let interval = match mode {
                    SoundnessMode::Exact => code.soundness(limits)?,
                    SoundnessMode::Sampled => code.soundness_sampled(a.trials, seed, limits)?,
                };
                reports.push(BundleReport::Soundness { target: "h".into(), interval });
            }
        }
        Matrices::Css { h_x, h_z } => {
            let code = CssCode::new(h_x.clone(), h_z.clone())?;
            writeln!(out, "n {} k {}", code.n(), code.dimension())?;
            if a.distance || nothing_chosen {
                let (d_x, d_z) = code.distances(limits)?;
                reports.push(BundleReport::Distance { label: "d_x".into(), value: d_x });
                reports.push(BundleReport::Distance { label: "d_z".into(), value: d_z });
            }
            if let Some(mode) = a.soundness {
                let interval = match mode {
                    SoundnessMode::Exact => code.soundness_interval(limits)?,
                    SoundnessMode::Sampled => sampled_css(&code, a.trials, seed, limits)?,
                };
                reports.push(BundleReport::Soundness { target: "code".into(), interval });
            }
        }
    }
    if a.locality || nothing_chosen {
        for (name, m) in bundle.matrices.named() {
            reports.push(BundleReport::Locality {
                matrix: name.into(),
                profile: locality_profile(m),
            });
        }
    }

    for r in &reports {
        writeln!(out, "{}", describe(r))?;
    }
    if a.save {
        bundle.reports.retain(|old| !reports.iter().any(|new| same_slot(old, new)));
        bundle.reports.extend(reports);
        bundle.save(&a.bundle)?;
    }
    Ok(0)
}

/// Sampling bounds each side's soundness from above, and the quantum
/// soundness is at most twice the smaller side.
fn sampled_css(code: &CssCode, trials: usize, seed: u64, limits: &Limits) -> Result<SoundnessInterval, CliError> {
    let x = code.x_checks_code().soundness_sampled(trials, seed, limits)?;
    let z = code.z_checks_code().soundness_sampled(trials, seed.wrapping_add(1), limits)?;
    Ok(SoundnessInterval {
        lower: x.lower.min(z.lower),
        upper: x.upper.min(z.upper) * 2,
        method: SoundnessMethod::Sampled,
    })
}

fn same_slot(a: &BundleReport, b: &BundleReport) -> bool {
    match (a, b) {
        (BundleReport::Distance { label: x, .. }, BundleReport::Distance { label: y, .. }) => x == y,
        (BundleReport::Soundness { target: x, .. }, BundleReport::Soundness { target: y, .. }) => x == y,
        (BundleReport::Locality { matrix: x, .. }, BundleReport::Locality { matrix: y, .. }) => x == y,
        _ => false,
    }
}

fn describe(r: &BundleReport) -> String {
    let ratio = |q: &qltclab_core::Rational| format!("{}/{}", q.numer(), q.denom());
    match r {
        BundleReport::Distance { label, value } => format!("{label} {value}"),
        BundleReport::Soundness { target, interval } => format!(
            "soundness {target} [{}, {}] ({})",
            ratio(&interval.lower),
            ratio(&interval.upper),
            interval.method.as_str()
        ),
        BundleReport::Locality { matrix, profile: p } => format!(
            "locality {matrix}: {}x{} max row {} max col {} avg row {} avg col {} total {}",
            p.rows,
            p.cols,
            p.max_row_weight,
            p.max_col_weight,
            ratio(&p.avg_row_weight),
            ratio(&p.avg_col_weight),
            p.total_weight
        ),
        BundleReport::Verification(v) => v.to_string(),
    }
}

fn verify_command(
    a: &VerifyArgs,
    seed: u64,
    limits: &Limits,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let only = match a.statement.as_str() {
        "all" => None,
        id => Some(id.parse::<Statement>()?),
    };
    let suite: Vec<(Statement, Instance)> = match (&a.instance, only) {
        (Some(inst), Some(s)) => vec![(s, inst.parse()?)],
        (Some(_), None) => return Err(usage("--instance needs a single statement id, not `all`")),
        (None, _) => standard_suite(seed)
            .into_iter()
            .filter(|(s, _)| only.is_none_or(|o| o == *s))
            .collect(),
    };

    let results: Vec<qltclab_core::Result<VerificationReport>> =
        pool.install(|| suite.par_iter().map(|(s, i)| verify(*s, i, limits)).collect());
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let failed = reports.iter().filter(|r| !r.pass).count();
    for r in &reports {
        if a.json {
            writeln!(out, "{}", report_json(r))?;
        } else {
            writeln!(out, "{r}")?;
        }
    }
    writeln!(err, "{} checks: {} passed, {} failed", reports.len(), reports.len() - failed, failed)?;
    Ok(if failed == 0 { 0 } else { EXIT_VERIFICATION_FAILED })
}

fn sweep_command(
    a: &SweepArgs,
    limits: &Limits,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let grid: Grid = a.grid.parse()?;
    let cells = sweep_cells(a.family, &grid)?;
    let rows: Vec<SweepRow> = pool.install(|| cells.par_iter().map(|c| c.run(limits)).collect());
    match &a.csv {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            write_sweep_csv(&rows, std::io::BufWriter::new(file))?;
            writeln!(err, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_sweep_csv(&rows, out)?,
    }
    Ok(0)
}

fn export(a: &ExportArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let bundle = CodeBundle::load(&a.bundle)?;
    let ExportFormat::Alist = a.format;
    for (name, m) in bundle.matrices.named() {
        let text = to_alist(m);
        match &a.out_dir {
            Some(dir) => write_file(&dir.join(format!("{name}.alist")), &text)?,
            None => {
                writeln!(out, "# {name}")?;
                write!(out, "{text}")?;
            }
        }
    }
    Ok(0)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qltclab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_balanced_bundle() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.bundle");
        let p = path.to_str().unwrap();
        let (code, out, _) = run_args(&["construct", "balanced", "--h", "rep3", "--ell", "2", "--variant", "star", "--out", p]);
        assert_eq!(code, 0);
        assert!(out.contains("14 bits"), "{out}");
        let b = CodeBundle::load(&path).unwrap();
        assert_eq!(b.n(), 14);
        assert_eq!(b.metadata.params, "h=rep3;ell=2;variant=star");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_args(&["construct", "balanced", "--ell", "1", "--out", "x"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"), "{err}");
        let (code, _, err) = run_args(&["construct", "balanced", "--ell", "2", "--out", "x"]);
        assert_eq!(code, 2);
        assert!(err.contains("needs --h") && err.contains("Usage"), "{err}");
        let (code, _, _) = run_args(&["construct", "gauge", "--h", "rep3", "--ell", "2", "--out", "x"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["verify", "no-such-statement"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["verify", "all", "--instance", "rep3"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn verify_single_instance() {
        let (code, out, _) = run_args(&["verify", "cp-dimension", "--instance", "rep3*hamming7", "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        assert!(out.contains(r#""statement":"cp-dimension""#));
    }

    #[test]
    fn analyze_and_save() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.bundle");
        let p = path.to_str().unwrap();
        assert_eq!(run_args(&["construct", "gauge", "--h", "rep3", "--out", p]).0, 0);
        let (code, out, _) = run_args(&["analyze", p, "--distance", "--soundness", "exact", "--save"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("d_x 2") && out.contains("d_z 3"), "{out}");
        assert_eq!(run_args(&["analyze", p, "--soundness", "exact", "--save"]).0, 0);
        let b = CodeBundle::load(&path).unwrap();
        assert_eq!(b.reports.len(), 3);
        let (code, out, _) = run_args(&["analyze", p, "--soundness", "sampled", "--trials", "200"]);
        assert_eq!(code, 0);
        assert!(out.contains("(sampled)"), "{out}");
    }

    #[test]
    fn cap_too_small_is_a_runtime_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.bundle");
        let p = path.to_str().unwrap();
        assert_eq!(run_args(&["construct", "code", "--h", "hamming7", "--out", p]).0, 0);
        let (code, _, err) = run_args(&["--cap", "2", "analyze", p, "--distance"]);
        assert_eq!(code, 3, "{err}");
        assert_eq!(run_args(&["analyze", "/nonexistent/q.bundle"]).0, 3);
    }
}
