use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cu_lab::catalog::{all_instances, entry_manifest, instance};
use cu_lab::comparison::beta;
use cu_lab::error::LabError;
use cu_lab::properties::{check, evaluate, verify_certificate, Bounds, CertificateFile, Property};
use cu_lab::report::{run_report, Format, ReportConfig};
use cu_lab::semigroup::Semigroup;
use cu_lab::with_instance;

#[derive(Parser)]
#[command(name = "cu-lab", version, about = "Exact ordered-semigroup laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of example semigroups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Bounded and exact comparison value β(x, y).
    Beta {
        entry: String,
        x: String,
        y: String,
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Decide one property on one catalog instance.
    Check {
        entry: String,
        property: String,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, env = "CU_LAB_SEED", default_value_t = 42)]
        seed: u64,
        /// Verify this certificate instead of searching.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Verify a certificate file.
    Verify { file: PathBuf },
    /// Evaluate the verdict matrix and compare it with the manifest.
    Report {
        #[arg(long, conflicts_with = "entries")]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        entries: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        #[arg(long, env = "CU_LAB_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    #[value(alias = "markdown")]
    Md,
}

fn read(path: &PathBuf) -> Result<String, LabError> {
    std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn catalog_list() -> ExitCode {
    for inst in all_instances() {
        let m = entry_manifest(inst.entry()).expect("every entry has a manifest");
        let caps = &m.capabilities;
        let flags: Vec<&str> = [
            ("finite_carrier", caps.finite_carrier),
            ("scalar_embedding", caps.scalar_embedding),
            ("indicator_stream", caps.indicator_stream),
            ("simple", caps.simple),
            ("algebraic", caps.algebraic),
        ]
        .into_iter()
        .filter_map(|(n, on)| on.then_some(n))
        .collect();
        println!(
            "{:<11} {:<19} [{}] functionals: {}",
            inst.id(),
            inst.entry(),
            flags.join(", "),
            m.functionals.families.join(", ")
        );
    }
    ExitCode::SUCCESS
}

fn cmd_beta(entry: &str, x: &str, y: &str, bound: u64) -> Result<ExitCode, LabError> {
    let inst = instance(entry)?;
    with_instance!(&inst, s => {
        let xe = s.parse(x)?;
        let ye = s.parse(y)?;
        let r = beta(s, &xe, &ye, bound);
        println!("upper   {}", r.upper);
        match r.exact {
            Some(e) => println!("exact   {e}"),
            None => println!("exact   unknown"),
        }
        match r.witness {
            Some((k, l)) => println!("witness k={k} l={l}"),
            None => println!("witness none"),
        }
        println!("status  {:?}", r.status);
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    entry: &str,
    property: &str,
    samples: u64,
    seed: u64,
    cert: Option<&PathBuf>,
) -> Result<ExitCode, LabError> {
    let inst = instance(entry)?;
    let property: Property = property.parse()?;
    let bounds = Bounds {
        samples,
        ..Bounds::default()
    };
    let verdict = match cert {
        None => evaluate(&inst, property, &bounds, seed),
        Some(path) => {
            let c = CertificateFile::from_json(&read(path)?)?;
            let outcome = with_instance!(&inst, s => check(s, property, Some(&c), &bounds, seed));
            match outcome {
                Ok(v) => v,
                Err(rej) => {
                    eprintln!("{rej}");
                    for line in &rej.transcript {
                        eprintln!("  {line}");
                    }
                    return Ok(ExitCode::from(1));
                }
            }
        }
    };
    println!("{}", serde_json::to_string_pretty(&verdict)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(file: &PathBuf) -> Result<ExitCode, LabError> {
    let cert = CertificateFile::from_json(&read(file)?)?;
    match verify_certificate(&cert) {
        Ok(transcript) => {
            for line in transcript {
                println!("{line}");
            }
            println!("verified");
            Ok(ExitCode::SUCCESS)
        }
        Err(rej) => {
            for line in &rej.transcript {
                println!("{line}");
            }
            println!("{rej}");
            Ok(ExitCode::from(1))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_report(
    all: bool,
    entries: &[String],
    properties: &[String],
    seed: u64,
    samples: u64,
    format: FormatArg,
    out: Option<&PathBuf>,
) -> Result<ExitCode, LabError> {
    let mut config = ReportConfig::all(seed);
    if !all && !entries.is_empty() {
        config.instances = ReportConfig::select_instances(entries)?;
    }
    if !properties.is_empty() && properties != ["all"] {
        config.properties = ReportConfig::select_properties(properties)?;
    }
    config.bounds.samples = samples;
    config.format = match format {
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Markdown,
    };
    let report = run_report(&config)?;
    let text = report.render(config.format);
    match out {
        Some(path) => std::fs::write(path, &text).map_err(|source| LabError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    if report.is_success() {
        return Ok(ExitCode::SUCCESS);
    }
    for r in report.mismatches() {
        eprintln!(
            "mismatch: {} {} expected {:?}, got {}",
            r.instance,
            r.property,
            r.expected,
            r.outcome.label()
        );
    }
    for f in &report.audit.violations {
        eprintln!("audit: {} {}: {}", f.instance, f.rule, f.detail);
    }
    Ok(ExitCode::from(1))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => Ok(catalog_list()),
        Command::Beta { entry, x, y, bound } => cmd_beta(entry, x, y, *bound),
        Command::Check {
            entry,
            property,
            samples,
            seed,
            cert,
        } => cmd_check(entry, property, *samples, *seed, cert.as_ref()),
        Command::Verify { file } => cmd_verify(file),
        Command::Report {
            all,
            entries,
            properties,
            seed,
            samples,
            format,
            out,
        } => cmd_report(*all, entries, properties, *seed, *samples, *format, out.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
