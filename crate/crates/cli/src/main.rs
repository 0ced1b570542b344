use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use symclass::components::{analyze_path, normal_form, Quotient, DEFAULT_K_MAX};
use symclass::mat::check_tol;
use symclass::{Error, DEFAULT_TOL};
use symclass_cli::diagram::{render, DiagramOptions};
use symclass_cli::family::{render_table, write_csv};
use symclass_cli::input::{load_input, InputDocument};
use symclass_cli::report::classify_triple;
use symclass_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "symclass", version, about = "Classify reflection-symmetric symplectic matrices")]
struct Cli {
    /// Relative tolerance; overrides the input settings.
    #[arg(long, global = true, env = "SYMCLASS_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a single matrix.
    Classify {
        input: PathBuf,
        #[arg(long)]
        quotient: Option<Quotient>,
    },
    /// Normal form of a single 4x4 matrix.
    NormalForm { input: PathBuf },
    /// Events and verdict along a one-parameter family.
    Family {
        input: PathBuf,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        quotient: Option<Quotient>,
        /// Write (param, tau, delta, label) rows here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Also write the JSON report here.
        #[arg(long)]
        json_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// SVG stability diagram of the (tr A, det A) plane.
    Diagram {
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-4.5,4.5")]
        xrange: (f64, f64),
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-4,5")]
        yrange: (f64, f64),
        /// Draw resonance lines up to this order.
        #[arg(long)]
        k_max: Option<u32>,
        /// Family file drawn as a polyline with event markers.
        #[arg(long)]
        overlay: Option<PathBuf>,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("empty or non-finite range {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn resolve_tol(flag: Option<f64>, doc: Option<&InputDocument>) -> Result<f64> {
    let tol = flag
        .or_else(|| doc.and_then(|d| d.settings.tol))
        .unwrap_or(DEFAULT_TOL);
    check_tol(tol)?;
    Ok(tol)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::io("<stdout>", e.into()))?;
    writeln!(out).map_err(|e| CliError::io("<stdout>", e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn load_family(
    path: &Path,
    tol_flag: Option<f64>,
    k_max: Option<u32>,
    quotient: Option<Quotient>,
) -> Result<symclass::components::PathReport> {
    let input = load_input(path)?;
    let doc = &input.doc;
    let tol = resolve_tol(tol_flag, Some(doc))?;
    let k_max = k_max.or(doc.settings.k_max).unwrap_or(DEFAULT_K_MAX);
    let quotient = quotient.or(doc.settings.quotient).unwrap_or(Quotient::SpI);
    let family = doc.family(tol)?;
    Ok(analyze_path(&family, k_max, quotient, tol)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify { input, quotient } => {
            let loaded = load_input(&input)?;
            let tol = resolve_tol(cli.tol, Some(&loaded.doc))?;
            let quotient = quotient.or(loaded.doc.settings.quotient).unwrap_or(Quotient::SpI);
            let t = loaded.doc.triple(tol)?;
            print_json(&classify_triple(&t, quotient, tol, &loaded.sha256)?)
        }
        Command::NormalForm { input } => {
            let loaded = load_input(&input)?;
            let tol = resolve_tol(cli.tol, Some(&loaded.doc))?;
            let t = loaded.doc.triple(tol)?;
            print_json(&normal_form(&t, tol)?)
        }
        Command::Family {
            input,
            k_max,
            quotient,
            csv_out,
            json_out,
            format,
        } => {
            let report = load_family(&input, cli.tol, k_max, quotient)?;
            if let Some(path) = csv_out {
                let f = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
                write_csv(&report, f)?;
            }
            if let Some(path) = json_out {
                let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::io(&path, e.into()))?;
                write_file(&path, text.as_bytes())?;
            }
            match format {
                Format::Table => {
                    print!("{}", render_table(&report));
                    Ok(())
                }
                Format::Json => print_json(&report),
            }
        }
        Command::Diagram {
            xrange,
            yrange,
            k_max,
            overlay,
            out,
        } => {
            let overlay = match overlay {
                Some(path) => Some(load_family(&path, cli.tol, k_max, None)?),
                None => None,
            };
            let svg = render(&DiagramOptions {
                xrange,
                yrange,
                k_max,
                overlay,
            });
            match out {
                Some(path) => write_file(&path, svg.as_bytes()),
                None => {
                    print!("{svg}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(Error::StructureViolation(v)) = &e {
                for x in v {
                    eprintln!("  {x}");
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
