use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vdw::eval::{eval, EvalParams, Row, FUNCTION_IDS};
use vdw::formats::{write_csv, write_json, Report, SCHEMA_VERSION};
use vdw::grid::GridSpec;
use vdw::identities::{registry, run_all, RunConfig, Tier};
use vdw::sample::{draw_blocks, sampler, summarize, SampleParams, SAMPLER_IDS};
use vdw::{output_dir, parse_character, CliError, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "vdw", version, about = "Van Dantzig pairs, Wald couples and the special functions behind them")]
struct Cli {
    /// RNG seed; every run with the same seed is bit-for-bit reproducible.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (eval, sample) or report directory (verify).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a function on a grid.
    Eval(EvalArgs),
    /// Run identity and couple verifications; `all` runs everything.
    Verify(VerifyArgs),
    /// Draw from a named sampler.
    Sample(SampleArgs),
    /// List functions, identities and samplers.
    List,
}

#[derive(Args)]
struct EvalArgs {
    function: String,
    /// start:stop:count[:log]
    #[arg(long, conflicts_with = "s", allow_hyphen_values = true)]
    grid: Option<GridSpec>,
    /// A single point.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Imaginary part of the argument.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    im: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    nu: f64,
    /// principal, principal:k, mod4, prime:p:j, or a character JSON file.
    #[arg(long = "char", default_value = "principal")]
    character: String,
    #[arg(long, default_value_t = 10_000)]
    truncation: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required = true)]
    ids: Vec<String>,
    /// Reduced grids and draws (the default).
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    #[arg(long)]
    full: bool,
    /// Monte Carlo sample size override.
    #[arg(long)]
    draws: Option<usize>,
    /// Analytic tolerance override.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SampleArgs {
    sampler: String,
    #[arg(long, default_value_t = 10_000)]
    draws: usize,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long = "char", default_value = "principal")]
    character: String,
    #[arg(long, default_value_t = 2.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Points s for E exp(-sX) and E exp(isX), comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    cf_at: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("vdw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Eval(a) => cmd_eval(a, cli.format, cli.out.as_deref()),
        Command::Verify(a) => cmd_verify(a, cli.seed, cli.out),
        Command::Sample(a) => cmd_sample(a, cli.seed, cli.out),
        Command::List => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "functions:")?;
            for (id, d) in FUNCTION_IDS {
                writeln!(out, "  {id:<20} {d}")?;
            }
            writeln!(out, "identities:")?;
            for i in registry() {
                writeln!(out, "  {:<30} {}", i.id, i.description)?;
            }
            writeln!(out, "samplers:")?;
            for (id, d) in SAMPLER_IDS {
                writeln!(out, "  {id:<20} {d}")?;
            }
            Ok(0)
        }
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(std::io::BufWriter::new(std::fs::File::create(p)?))
        }
        None => Box::new(std::io::stdout().lock()),
    })
}

fn cmd_eval(a: EvalArgs, format: Format, out: Option<&Path>) -> Result<u8, CliError> {
    let grid = match (a.grid, a.s) {
        (Some(g), _) => g.values(),
        (None, Some(s)) => vec![s],
        (None, None) => return Err(CliError::Usage("eval needs --grid or --s".into())),
    };
    let params = EvalParams { im: a.im, a: a.a, nu: a.nu, chi: parse_character(&a.character)?, truncation: a.truncation, tol: a.tol };
    let rows = eval(&a.function, &grid, &params)?;
    let mut w = sink(out)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut w,
                &serde_json::json!({ "schema_version": SCHEMA_VERSION, "function": a.function, "rows": rows }),
            )?;
            writeln!(w)?;
        }
        Format::Csv => write_rows(w, &rows)?,
    }
    Ok(0)
}

fn write_rows(out: impl Write, rows: &[Row]) -> Result<(), CliError> {
    let complex = rows.iter().any(|r| r.value_im.is_some());
    let mut w = csv::Writer::from_writer(out);
    if complex {
        w.write_record(["input", "value", "value_im", "error_estimate"])?;
    } else {
        w.write_record(["input", "value", "error_estimate"])?;
    }
    let f = vdw::formats::format_float;
    for r in rows {
        let err = r.error_estimate.map(f).unwrap_or_default();
        if complex {
            w.write_record([f(r.input), f(r.value), f(r.value_im.unwrap_or(0.0)), err])?;
        } else {
            w.write_record([f(r.input), f(r.value), err])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn report_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{}.json", id.replace(':', "_")))
}

fn cmd_verify(a: VerifyArgs, seed: u64, out: Option<PathBuf>) -> Result<u8, CliError> {
    let tier = if a.full { Tier::Full } else { Tier::Quick };
    let cfg = RunConfig { tier, seed, draws: a.draws, tol: a.tol };
    if a.draws == Some(0) {
        return Err(CliError::Usage("--draws must be positive".into()));
    }
    let all = registry();
    let selected: Vec<_> = if a.ids.iter().any(|i| i == "all") {
        all
    } else {
        let mut picked = Vec::new();
        for id in &a.ids {
            let k = all.iter().position(|i| &i.id == id).ok_or_else(|| CliError::UnknownId(id.clone()))?;
            if !picked.contains(&k) {
                picked.push(k);
            }
        }
        let mut pool: Vec<_> = all.into_iter().map(Some).collect();
        picked.iter().filter_map(|&k| pool[k].take()).collect()
    };
    let reports = run_all(&selected, &cfg);
    let dir = out.unwrap_or_else(output_dir);
    let mut stdout = std::io::stdout().lock();
    for r in &reports {
        write_json(&report_path(&dir, &r.id), r)?;
        writeln!(stdout, "{}", r.summary_line())?;
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if a.ids.iter().any(|i| i == "all") {
        write_json(&dir.join("summary.json"), &summary(&reports, &cfg))?;
    }
    writeln!(stdout, "{} of {} passed; reports in {}", reports.len() - failed, reports.len(), dir.display())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn summary(reports: &[Report], cfg: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "tier": match cfg.tier { Tier::Quick => "quick", Tier::Full => "full" },
        "seed": cfg.seed,
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports.iter().map(|r| serde_json::json!({ "id": r.id, "pass": r.pass, "max_residual": r.max_residual })).collect::<Vec<_>>(),
    })
}

fn cmd_sample(a: SampleArgs, seed: u64, out: Option<PathBuf>) -> Result<u8, CliError> {
    if a.draws < 2 {
        return Err(CliError::Usage("--draws must be at least 2".into()));
    }
    let params = SampleParams { truncation: a.truncation, a: a.a, nu: a.nu, chi: parse_character(&a.character)?, sigma: a.sigma, t: a.t };
    let f = sampler(&a.sampler, &params)?;
    let xs = draw_blocks(a.draws, seed, &*f)?;
    let summary = summarize(&a.sampler.to_ascii_lowercase(), seed, &xs, &a.cf_at)?;
    let csv_path = out.unwrap_or_else(|| output_dir().join(format!("sample-{}.csv", a.sampler.to_ascii_lowercase())));
    let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
    write_csv(sink(Some(&csv_path))?, &["x"], &rows)?;
    write_json(&csv_path.with_extension("json"), &summary)?;
    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "{}: {} draws, mean {:.6} (se {:.2e}), variance {:.6}",
        summary.sampler, summary.draws, summary.mean, summary.mean_se, summary.variance
    )?;
    for t in &summary.transforms {
        let lt = t.laplace.map_or("n/a".into(), |v| format!("{v:.6} (se {:.2e})", t.laplace_se.unwrap_or(f64::NAN)));
        writeln!(stdout, "  s = {}: E exp(-sX) = {lt}, E exp(isX) = {:.6}{:+.6}i (se {:.2e})", t.s, t.cf_re, t.cf_im, t.cf_se)?;
    }
    writeln!(stdout, "draws in {}", csv_path.display())?;
    Ok(0)
}
