//! Command dispatch and report rendering for the `trigauss` binary.

pub mod spec;
pub mod verify;

use std::fmt;

use serde::Serialize;
use trigauss_core::curve::{dimension_bounds, Curve, CurveSummary};
use trigauss_core::exact::Rational;
use trigauss_core::gaussian::{
    expected_wedge_rank, kernel_chain, kernel_vectors, mu2_kernel, ChainMethod, GradedPiece, KernelChain, QuadricId,
    WedgeVector,
};
use trigauss_core::schiffer::{
    canonical_tensor, certify_non_asymptotic, default_truncation, isotropy_check, rho, with_frame, IsotropyReport,
};
use trigauss_core::Error;

pub use spec::{parse_spec, CurveSpec, SpecError};
pub use verify::{verify_curve, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Info,
    RankTable,
    Kernel,
    Mu2Kernel,
    Rho,
    Certify,
    Isotropy,
    Bounds,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::RankTable => "rank-table",
            Command::Kernel => "kernel",
            Command::Mu2Kernel => "mu2-kernel",
            Command::Rho => "rho",
            Command::Certify => "certify",
            Command::Isotropy => "isotropy",
            Command::Bounds => "bounds",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub format: Format,
    pub k_max: Option<usize>,
    pub k: Option<usize>,
    pub piece: Option<GradedPiece>,
    pub quadric: Option<QuadricId>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    /// `None` uses both methods where a closed form exists and the Wronskian elsewhere.
    pub method: Option<ChainMethod>,
    pub truncation: Option<usize>,
}

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const MISMATCH: i32 = 2;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// Newline-terminated report text.
    pub body: String,
    pub exit: i32,
}

#[derive(Debug)]
pub enum CliError {
    Spec(SpecError),
    Compute(Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Spec(e) => e.fmt(f),
            CliError::Compute(e) => write!(f, "[{}] {e}", e.code()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Spec(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()).into())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn no_csv(command: Command) -> CliError {
    CliError::Usage(format!("{} has no CSV form; use --format json", command.name()))
}

/// The method actually used for `piece` at depth `k_max`.
fn method_for(c: &Curve, piece: GradedPiece, k_max: usize, requested: Option<ChainMethod>) -> ChainMethod {
    match requested {
        Some(m) => m,
        None if piece == GradedPiece::LM && (k_max >= 2 || c.r2() != 0) => ChainMethod::Wronskian,
        None => ChainMethod::Both,
    }
}

#[derive(Serialize)]
struct Info {
    curve: CurveSummary,
    default_truncation: usize,
}

#[derive(Serialize)]
struct RankRow {
    piece: GradedPiece,
    k: usize,
    dim_kernel: usize,
    rank: usize,
    expected_rank: Option<usize>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    experimental: bool,
}

#[derive(Serialize)]
struct RankTable {
    genus: usize,
    n1: usize,
    n2: usize,
    rows: Vec<RankRow>,
}

fn rank_rows(c: &Curve, chain: &KernelChain) -> Vec<RankRow> {
    let piece = chain.piece();
    chain.levels()[1..]
        .iter()
        .map(|level| {
            let expected = match piece {
                GradedPiece::LM if level.k == 1 && c.r2() == 0 && c.genus() >= 8 => Some(2 * c.r() - 12),
                GradedPiece::LM => None,
                _ => Some(expected_wedge_rank(piece.factor_sizes(c).0, level.k)),
            };
            RankRow {
                piece,
                k: level.k,
                dim_kernel: level.kernel.dim(),
                rank: level.rank,
                expected_rank: expected,
                matches: expected.map(|e| e == level.rank),
                experimental: piece == GradedPiece::LM && level.k >= 2,
            }
        })
        .collect()
}

fn rank_table(c: &Curve, opts: &Options) -> CliResult<Output> {
    let mut rows = Vec::new();
    for piece in GradedPiece::ALL {
        let depth = match (piece, opts.k_max) {
            (_, Some(k)) => k,
            (GradedPiece::LM, None) => 1,
            (_, None) => piece.factor_sizes(c).0 / 2 + 1,
        };
        let chain = kernel_chain(c, piece, depth, method_for(c, piece, depth, opts.method))?;
        rows.extend(rank_rows(c, &chain));
    }
    let exit = if rows.iter().any(|r| r.matches == Some(false) && !r.experimental) {
        exit::MISMATCH
    } else {
        exit::OK
    };
    let body = match opts.format {
        Format::Json => json(&RankTable {
            genus: c.genus(),
            n1: c.n1(),
            n2: c.n2(),
            rows,
        })?,
        Format::Csv => csv_table(
            &["piece", "k", "dim_kernel", "rank", "expected_rank", "match"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.piece.to_string(),
                        r.k.to_string(),
                        r.dim_kernel.to_string(),
                        r.rank.to_string(),
                        opt(&r.expected_rank),
                        if r.experimental { "experimental".to_string() } else { opt(&r.matches) },
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Output { body, exit })
}

#[derive(Serialize)]
struct KernelReport {
    piece: GradedPiece,
    k: usize,
    method: ChainMethod,
    dim: usize,
    rank: usize,
    experimental: bool,
    basis: Vec<WedgeVector>,
}

fn kernel(c: &Curve, opts: &Options) -> CliResult<Output> {
    let piece = opts
        .piece
        .ok_or_else(|| CliError::Usage("kernel needs --piece LL|MM|LM".into()))?;
    let k = opts.k.unwrap_or(1);
    let method = method_for(c, piece, k, opts.method);
    let chain = kernel_chain(c, piece, k, method)?;
    let level = &chain.levels()[k];
    json(&KernelReport {
        piece,
        k,
        method,
        dim: level.kernel.dim(),
        rank: level.rank,
        experimental: chain.is_experimental(),
        basis: kernel_vectors(c, piece, &level.kernel),
    })
    .map(|body| Output { body, exit: exit::OK })
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct PerPiece<T> {
    LL: T,
    MM: T,
    LM: T,
}

#[derive(Serialize)]
struct Mu2Report {
    ranks: PerPiece<usize>,
    total_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_total_rank: Option<usize>,
    basis: PerPiece<Vec<WedgeVector>>,
}

fn mu2(c: &Curve) -> CliResult<Output> {
    let k = mu2_kernel(c)?;
    let vectors = |p: GradedPiece| kernel_vectors(c, p, k.kernel(p));
    let expected = (c.genus() >= 8).then(|| 4 * c.genus() - 18);
    let report = Mu2Report {
        ranks: PerPiece {
            LL: k.rank(GradedPiece::LL),
            MM: k.rank(GradedPiece::MM),
            LM: k.rank(GradedPiece::LM),
        },
        total_rank: k.total_rank(),
        expected_total_rank: expected,
        basis: PerPiece {
            LL: vectors(GradedPiece::LL),
            MM: vectors(GradedPiece::MM),
            LM: vectors(GradedPiece::LM),
        },
    };
    let exit = if expected.is_some_and(|e| e != report.total_rank) {
        exit::MISMATCH
    } else {
        exit::OK
    };
    Ok(Output {
        body: json(&report)?,
        exit,
    })
}

#[derive(Serialize)]
struct RhoReport {
    quadric: QuadricId,
    n: usize,
    l: usize,
    vanishing_order: usize,
    q: Rational,
}

fn rho_command(c: &Curve, opts: &Options) -> CliResult<Output> {
    let id = opts.quadric.unwrap_or(QuadricId::new(GradedPiece::LM, 1, 1));
    let (n, l) = (opts.n.unwrap_or(2), opts.l.unwrap_or(2));
    let q = canonical_tensor(c, &WedgeVector::basis(c, id.piece, id.i, id.j)?, None)?;
    let (value, _) = with_frame(c, opts.truncation, |f| rho(f, &q, n, l))?;
    json(&RhoReport {
        quadric: id,
        n: value.n,
        l: value.l,
        vanishing_order: value.vanishing_order,
        q: value.q,
    })
    .map(|body| Output { body, exit: exit::OK })
}

fn certify(c: &Curve, opts: &Options) -> CliResult<Output> {
    let k_max = opts.k_max.unwrap_or(4);
    let (out, _) = with_frame(c, opts.truncation, |f| certify_non_asymptotic(c, f, k_max))?;
    let body = match opts.format {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["k", "quadric", "vanishing_order", "q", "experimental", "note"],
            out.iter()
                .map(|o| {
                    let cert = o.certificate.as_ref();
                    vec![
                        o.k.to_string(),
                        opt(&cert.map(|c| c.quadric.clone())),
                        opt(&cert.map(|c| c.rho.vanishing_order)),
                        opt(&cert.map(|c| c.rho.q.clone())),
                        cert.is_some_and(|c| c.experimental).to_string(),
                        opt(&o.note),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Output { body, exit: exit::OK })
}

#[derive(Serialize)]
struct IsotropyOutput {
    truncation: usize,
    #[serde(flatten)]
    report: IsotropyReport,
}

fn isotropy(c: &Curve, opts: &Options) -> CliResult<Output> {
    let (report, truncation) = with_frame(c, opts.truncation, |f| isotropy_check(c, f))?;
    let exit = if report.holds || report.experimental {
        exit::OK
    } else {
        exit::MISMATCH
    };
    Ok(Output {
        body: json(&IsotropyOutput { truncation, report })?,
        exit,
    })
}

fn bounds(c: &Curve, opts: &Options) -> CliResult<Output> {
    let b = dimension_bounds(c, opts.k.unwrap_or(2));
    let body = match opts.format {
        Format::Json => json(&b)?,
        Format::Csv => csv_table(
            &["genus", "k", "geodesic", "specialized", "mu2k_lower"],
            vec![vec![
                b.genus.to_string(),
                b.k.to_string(),
                b.geodesic.to_string(),
                opt(&b.specialized),
                opt(&b.mu2k_lower),
            ]],
        )?,
    };
    Ok(Output { body, exit: exit::OK })
}

fn verify(c: &Curve, opts: &Options) -> CliResult<Output> {
    let truncation = opts.truncation.unwrap_or_else(|| default_truncation(c));
    let report = verify_curve(c, truncation, opts.k_max.unwrap_or(4))?;
    let exit = if report.passed() { exit::OK } else { exit::MISMATCH };
    let body = match opts.format {
        Format::Json => json(&report)?,
        Format::Csv => csv_table(
            &["id", "expected", "computed", "match", "experimental"],
            report
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        r.expected.clone(),
                        r.computed.clone(),
                        r.matches.to_string(),
                        r.experimental.to_string(),
                    ]
                })
                .collect(),
        )?,
    };
    Ok(Output { body, exit })
}

/// Builds the curve from `spec` and runs `command`.
pub fn run(command: Command, spec: &CurveSpec, opts: &Options) -> CliResult<Output> {
    let csv_ok = matches!(
        command,
        Command::RankTable | Command::Certify | Command::Bounds | Command::Verify
    );
    if opts.format == Format::Csv && !csv_ok {
        return Err(no_csv(command));
    }
    let c = spec.build()?;
    match command {
        Command::Info => json(&Info {
            curve: c.summary(),
            default_truncation: default_truncation(&c),
        })
        .map(|body| Output { body, exit: exit::OK }),
        Command::RankTable => rank_table(&c, opts),
        Command::Kernel => kernel(&c, opts),
        Command::Mu2Kernel => mu2(&c),
        Command::Rho => rho_command(&c, opts),
        Command::Certify => certify(&c, opts),
        Command::Isotropy => isotropy(&c, opts),
        Command::Bounds => bounds(&c, opts),
        Command::Verify => verify(&c, opts),
    }
}
