use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use trigauss_cli::spec::max_denom_from_env;
use trigauss_cli::{exit, parse_spec, run, Command, CurveSpec, Format, Options};
use trigauss_core::curve::GeneratorParams;
use trigauss_core::gaussian::{ChainMethod, GradedPiece, QuadricId};

/// Exact verification reports for cyclic trigonal curves.
#[derive(Debug, Parser)]
#[command(name = "trigauss", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Curve spec file (JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Generator seed; overrides the seed in a generator spec.
    #[arg(long)]
    seed: Option<u64>,
    /// Exponent-1 root count for a generated curve when no spec file is given.
    #[arg(long)]
    r1: Option<usize>,
    /// Exponent-2 root count for a generated curve.
    #[arg(long)]
    r2: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to DIR/<command>.<ext> instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Frame truncation N (default 3r + 16).
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    piece: Option<GradedPiece>,
    /// Basis quadric, e.g. LM:1:1.
    #[arg(long)]
    quadric: Option<QuadricId>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// closed_form, wronskian or both.
    #[arg(long)]
    method: Option<ChainMethod>,
}

fn load_spec(cli: &Cli) -> anyhow::Result<CurveSpec> {
    let mut spec = match (&cli.spec, cli.r1) {
        (Some(path), _) => {
            if cli.r1.is_some() || cli.r2.is_some() {
                bail!("--r1/--r2 cannot be combined with --spec");
            }
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_spec(&text)?
        }
        (None, Some(r1)) => {
            let Some(seed) = cli.seed else {
                bail!("a generated curve needs --seed");
            };
            CurveSpec::Generator(GeneratorParams::new(r1, cli.r2.unwrap_or(0), seed))
        }
        (None, None) => bail!("give --spec FILE or --r1 N [--r2 M] --seed S"),
    };
    if let (Some(seed), Some(_)) = (cli.seed, &cli.spec) {
        spec = spec.with_seed(seed)?;
    }
    if let Some(d) = max_denom_from_env()? {
        spec = spec.with_max_denom(d);
    }
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let spec = match load_spec(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit::INPUT as u8);
        }
    };
    let opts = Options {
        format: cli.format,
        k_max: cli.kmax,
        k: cli.k,
        piece: cli.piece,
        quadric: cli.quadric,
        n: cli.n,
        l: cli.l,
        method: cli.method,
        truncation: cli.truncation,
    };
    let output = match run(cli.command, &spec, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT as u8);
        }
    };
    let written = match &cli.out {
        Some(dir) => fs::create_dir_all(dir)
            .and_then(|_| {
                let path = dir.join(format!("{}.{}", cli.command.name(), cli.format.extension()));
                fs::write(&path, &output.body).map(|_| path)
            })
            .map(|path| eprintln!("wrote {}", path.display())),
        None => std::io::stdout().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(exit::INPUT as u8);
    }
    ExitCode::from(output.exit as u8)
}
