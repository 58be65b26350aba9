use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use amorph_core::empirical::{
    fit_slope, geometric_grid, lipschitz_ratio_probe, separation_profile, write_density_csv, write_profile_csv,
    ProfileParams, DEFAULT_NU_MAX, DEFAULT_NU_MIN, DEFAULT_POINTS, DEFAULT_WINDOW,
};
use amorph_core::invariants::{classify, null_witness_search, synthesize_target_ac, KernelDescriptor, MAX_AP_DEPTH};
use amorph_core::structure::pure_base;
use amorph_core::Substitution;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod report;
mod spec;

use report::{ac_json, envelope, to_pretty};
use spec::{parse_spec, render_spec, SpecDocument};

/// Seed used by `verify` unless `--seed` is given.
const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] amorph_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use amorph_core::Error::*;
        match self {
            CliError::Core(InvalidInput(_)) | CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Core(Precondition(_) | Estimation(_)) => 2,
            CliError::Core(Resource(_)) => 3,
            CliError::Core(Numeric(_) | Internal(_)) => 4,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "amorph", version, about = "Analyse primitive constant-length substitutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact analysis: height, discrepancy substitution, λ_s, ac, verdicts, d_m.
    Analyze {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Largest m for the non-constant progression counts d_m.
        #[arg(long, default_value_t = 8)]
        m_max: usize,
    },
    /// Empirical separation profile and slope, compared with the exact ac.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = DEFAULT_NU_MIN)]
        nu_min: f64,
        #[arg(long, default_value_t = DEFAULT_NU_MAX)]
        nu_max: f64,
        /// Seed for the sampled pairs of the Lipschitz probe.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Write the (nu, count) profile as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the sampled (i, j, d1, ds) densities as CSV.
        #[arg(long)]
        density_csv: Option<PathBuf>,
    },
    /// Write a binary substitution of length K^N with ac = log K^N / (log K^N - log L).
    Synthesize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the monoid of column maps and the kernel of the fixed point.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search a fixed-point prefix for a witness of non-nullness.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 4096)]
        prefix: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

struct Input {
    name: String,
    bytes: Vec<u8>,
    doc: SpecDocument,
}

fn load(path: &Path) -> CliResult<Input> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{name}: not UTF-8")))?;
    let doc = parse_spec(&name, &text)?;
    Ok(Input { name, bytes, doc })
}

fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(command: Command) -> CliResult<u8> {
    let start = Instant::now();
    match command {
        Command::Analyze { file, json, m_max, .. } => {
            if m_max > MAX_AP_DEPTH {
                return Err(amorph_core::Error::Resource(format!("--m-max {m_max} exceeds {MAX_AP_DEPTH}")).into());
            }
            let input = load(&file)?;
            let subst = &input.doc.substitution;
            let analysis = classify(subst)?;
            let pure = pure_base(subst)?;
            let d_m: Vec<String> = KernelDescriptor::new(&pure.pure_base)
                .nonconstant_counts(m_max)
                .iter()
                .map(|c| c.to_string())
                .collect();
            if json {
                let result = report::analysis_json(subst, &analysis, &d_m);
                let doc = envelope("analyze", Some((&input.name, &input.bytes)), None, result, elapsed(start));
                print!("{}", to_pretty(&doc));
            } else {
                print!("{}", report::analysis_text(subst, &analysis, &d_m));
            }
            Ok(0)
        }
        Command::Verify {
            file,
            points,
            window,
            nu_min,
            nu_max,
            seed,
            json,
            csv,
            density_csv,
        } => verify(&file, points, window, nu_min, nu_max, seed, json, csv, density_csv, start),
        Command::Synthesize { k, n, l, output } => {
            let subst = synthesize_target_ac(k, n, l)?;
            let len = (k as f64).powi(n as i32);
            let target = len.ln() / (len.ln() - (l as f64).ln());
            let doc = SpecDocument {
                source_name: "synthesized".into(),
                substitution: subst,
                comments: vec![format!("synthesized with k = {k}, n = {n}, l = {l}; ac = {target:.6}")],
            };
            let text = render_spec(&doc);
            match output {
                Some(path) => write_file(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Kernel { file, json } => {
            let input = load(&file)?;
            let pure = pure_base(&input.doc.substitution)?;
            let kernel = KernelDescriptor::new(&pure.pure_base);
            if json {
                let result = report::kernel_json(&pure.pure_base, pure.height, &kernel);
                let doc = envelope("kernel", Some((&input.name, &input.bytes)), None, result, elapsed(start));
                print!("{}", to_pretty(&doc));
            } else {
                print!("{}", report::kernel_text(&pure.pure_base, pure.height, &kernel));
            }
            Ok(0)
        }
        Command::Oracle {
            file,
            t,
            window,
            prefix,
            json,
        } => {
            let input = load(&file)?;
            let subst = &input.doc.substitution;
            let x = subst.fixed_point_prefix(prefix)?;
            let witness = null_witness_search(&x, t, window)?;
            if json {
                let result = report::witness_json(subst, witness.as_ref(), t, window, prefix);
                let doc = envelope("oracle", Some((&input.name, &input.bytes)), None, result, elapsed(start));
                print!("{}", to_pretty(&doc));
            } else {
                print!("{}", report::witness_text(subst, witness.as_ref(), t, window, prefix));
            }
            Ok(0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    file: &Path,
    points: usize,
    window: usize,
    nu_min: f64,
    nu_max: f64,
    seed: u64,
    json: bool,
    csv: Option<PathBuf>,
    density_csv: Option<PathBuf>,
    start: Instant,
) -> CliResult<u8> {
    if !(nu_min > 0.0 && nu_min <= nu_max && nu_max <= 1.0) {
        return Err(CliError::Usage("need 0 < --nu-min <= --nu-max <= 1".into()));
    }
    let input = load(file)?;
    let subst: &Substitution = &input.doc.substitution;
    let analysis = classify(subst)?;
    let params = ProfileParams {
        points,
        window,
        nu_grid: geometric_grid(nu_max, nu_min),
        ..ProfileParams::default()
    };
    let profile = separation_profile(subst, &params)?;
    if let Some(path) = &csv {
        let mut buf = Vec::new();
        write_profile_csv(&profile, &mut buf).expect("writing to memory");
        write_file(path, &buf)?;
    }
    let fit = fit_slope(&profile);

    let probe = if analysis.finite_system || !analysis.discrete_spectrum {
        None
    } else {
        Some(lipschitz_ratio_probe(subst, 64, window, seed)?)
    };
    if let (Some(path), Some(p)) = (&density_csv, &probe) {
        let mut buf = Vec::new();
        write_density_csv(&p.rows, &mut buf).expect("writing to memory");
        write_file(path, &buf)?;
    }

    let exact = analysis.ac.value();
    let relative_error = match (&fit, exact.is_finite() && exact > 0.0) {
        (Ok(f), true) => Some((f.slope - exact).abs() / exact),
        _ => None,
    };
    let result = json!({
        "points": points,
        "window": window,
        "nu_grid": profile.nu_grid,
        "counts": profile.counts,
        "slope": fit.as_ref().ok().map(|f| f.slope),
        "fit_range": fit.as_ref().ok().map(|f| [f.range.start, f.range.end]),
        "fit_error": fit.as_ref().err().map(|e| e.to_string()),
        "exact_ac": ac_json(&analysis.ac),
        "relative_error": relative_error,
        "lipschitz": probe.as_ref().map(|p| json!({
            "pairs": p.rows.len(),
            "min_ratio": p.min_ratio,
            "monotonicity_failures": p.monotonicity_failures,
        })),
    });
    if json {
        let doc = envelope("verify", Some((&input.name, &input.bytes)), Some(seed), result, elapsed(start));
        print!("{}", to_pretty(&doc));
    } else {
        print!("{}", verify_text(&result, &analysis.ac.to_string()));
    }
    match fit {
        Ok(_) => Ok(0),
        Err(e) => Err(e.into()),
    }
}

fn verify_text(result: &Value, exact: &str) -> String {
    let mut out = String::from("nu          count\n");
    let grid = result["nu_grid"].as_array().cloned().unwrap_or_default();
    let counts = result["counts"].as_array().cloned().unwrap_or_default();
    for (nu, c) in grid.iter().zip(&counts) {
        out.push_str(&format!("{:<10.6}  {}\n", nu.as_f64().unwrap_or(0.0), c));
    }
    match result["slope"].as_f64() {
        Some(s) => out.push_str(&format!("fitted slope   {s:.4}\n")),
        None => out.push_str(&format!("fitted slope   unavailable ({})\n", result["fit_error"].as_str().unwrap_or(""))),
    }
    out.push_str(&format!("exact ac       {exact}\n"));
    if let Some(r) = result["relative_error"].as_f64() {
        out.push_str(&format!("relative error {r:.4}\n"));
    }
    if let Some(l) = result["lipschitz"].as_object() {
        out.push_str(&format!(
            "D_S/D_1 min    {:.4} over {} pairs, {} monotonicity failures\n",
            l["min_ratio"].as_f64().unwrap_or(f64::NAN),
            l["pairs"],
            l["monotonicity_failures"]
        ));
    }
    out
}

fn elapsed(start: Instant) -> u128 {
    start.elapsed().as_millis()
}
