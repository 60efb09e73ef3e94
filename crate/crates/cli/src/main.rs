//! `qschroeder`: sequences, series, continued fractions, identity checks and
//! Hankel determinants from the command line.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qschroeder::closedforms::{f_from_h, f_from_recurrence, h_series, F_from_h, F_from_recurrence, H_series};
use qschroeder::contfrac::{cf_catalogue, CfId};
use qschroeder::qkit::{qexp_inv_series, qexp_series};
use qschroeder::schroeder::Family;
use qschroeder::verifier::{hankel_det, registry, verify_cases, Perturbation, SamplePlan};
use qschroeder::{Error, Params, QPoly, Rational, DEFAULT_ORDER};

use output::{Format, Out};

#[derive(Parser, Debug)]
#[command(name = "qschroeder", version, about = "Exact q-Schröder-like numbers, q-series and q-continued fractions")]
struct Cli {
    /// Output format (default: json for `verify`, plain otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Terms of a sequence family.
    Gen(GenArgs),
    /// Coefficients of one of the series F, f, h, H, e, einv.
    Series(SeriesArgs),
    /// A catalogue continued fraction expanded as a power series.
    Cf(CfArgs),
    /// Check registry identities at seeded sample points.
    Verify(VerifyArgs),
    /// Hankel determinants D_1..D_nmax of a sequence family.
    Hankel(HankelArgs),
}

#[derive(Args, Debug, Clone)]
struct Point {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    q: Rational,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: Rational,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    y: Rational,
}

impl Point {
    fn params(&self, order: usize) -> Params {
        Params::new(self.q.clone(), self.x.clone(), self.y.clone(), order)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GenMode {
    Rational,
    Qpoly,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// A, a, carlitz, catalan, little-schroeder or large-schroeder.
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = GenMode::Rational)]
    mode: GenMode,
    #[command(flatten)]
    point: Point,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "F")]
    BigF,
    #[value(name = "f")]
    SmallF,
    #[value(name = "h")]
    SmallH,
    #[value(name = "H")]
    BigH,
    #[value(name = "e")]
    E,
    #[value(name = "einv")]
    EInv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Closed,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(short = 'N', long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// How F and f are built.
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    method: Method,
    /// `c` in e(cz) and 1/e(cz).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    scale: Rational,
    #[command(flatten)]
    point: Point,
}

#[derive(Args, Debug)]
struct CfArgs {
    #[arg(long)]
    id: String,
    #[arg(short = 'N', long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Print this convergent instead of the stabilized value.
    #[arg(long)]
    depth: Option<usize>,
    #[command(flatten)]
    point: Point,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated registry ids (default: all).
    #[arg(long, value_delimiter = ',')]
    ids: Vec<String>,
    #[arg(long, default_value_t = 5)]
    points: usize,
    #[arg(short = 'N', long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// `ID:INDEX`: perturb one coefficient of a case to exercise failures.
    #[arg(long, hide = true)]
    corrupt: Option<String>,
}

#[derive(Args, Debug)]
struct HankelArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    #[arg(long, default_value_t = 0)]
    offset: usize,
    #[command(flatten)]
    point: Point,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateQ { .. } => 3,
            Error::NonStabilizing { .. } => 4,
            _ => 2,
        };
        let message = match e {
            Error::DegenerateQ { index } => format!("degenerate q: (q;q)_{index} vanishes"),
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Out, Failure> {
    let format = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Gen(a) => gen(a, format(Format::Plain)),
        Command::Series(a) => series(a, format(Format::Plain)),
        Command::Cf(a) => cf(a, format(Format::Plain)),
        Command::Verify(a) => verify(a, cli.seed, format(Format::Json)),
        Command::Hankel(a) => hankel(a, format(Format::Plain)),
    }
}

fn gen(a: &GenArgs, format: Format) -> Result<Out, Failure> {
    match a.mode {
        GenMode::Rational => {
            let p = a.point.params(a.nmax);
            let terms = a.family.generate(a.nmax, &p);
            Ok(output::sequence(format, a.family.name(), "rational", Some(&p), &terms))
        }
        GenMode::Qpoly => {
            let x = QPoly::constant(a.point.x.clone());
            let y = QPoly::constant(a.point.y.clone());
            let terms = a.family.generate_qpoly(a.nmax, &x, &y)?;
            Ok(output::sequence(format, a.family.name(), "qpoly", None, &terms))
        }
    }
}

fn series(a: &SeriesArgs, format: Format) -> Result<Out, Failure> {
    let p = a.point.params(a.order);
    let s = match (a.which, a.method) {
        (Which::BigF, Method::Recurrence) => F_from_recurrence(&p),
        (Which::BigF, Method::Closed) => F_from_h(&p)?,
        (Which::SmallF, Method::Recurrence) => f_from_recurrence(&p),
        (Which::SmallF, Method::Closed) => f_from_h(&p)?,
        (Which::SmallH, _) => h_series(&p)?,
        (Which::BigH, _) => H_series(&p)?,
        (Which::E, _) => qexp_series(a.order, &p.q, &a.scale)?,
        (Which::EInv, _) => qexp_inv_series(a.order, &p.q, &a.scale)?,
    };
    Ok(output::series(format, &s))
}

fn cf(a: &CfArgs, format: Format) -> Result<Out, Failure> {
    let id: CfId = a.id.parse()?;
    let spec = cf_catalogue(id, &a.point.params(a.order))?;
    match a.depth {
        Some(d) => {
            let c = spec.convergent(d)?;
            Ok(output::convergent(format, &spec, c.depth, &c.value, c.stabilized_to, false))
        }
        None => {
            let st = spec.stabilized()?;
            Ok(output::convergent(format, &spec, st.depth, &st.value, Some(spec.order()), true))
        }
    }
}

fn verify(a: &VerifyArgs, seed: u64, format: Format) -> Result<Out, Failure> {
    let mut plan = SamplePlan::new(seed, a.points, a.order);
    if let Some(spec) = &a.corrupt {
        let (id, index) = spec
            .rsplit_once(':')
            .and_then(|(id, i)| Some((id.to_string(), i.parse().ok()?)))
            .ok_or_else(|| usage(format!("--corrupt expects ID:INDEX, got `{spec}`")))?;
        plan.perturb = Some(Perturbation { id, index });
    }
    let all = registry();
    let cases = if a.ids.is_empty() {
        all
    } else {
        a.ids
            .iter()
            .map(|id| {
                all.iter()
                    .find(|c| c.id() == id)
                    .cloned()
                    .ok_or_else(|| Failure::from(Error::Unknown { kind: "identity", name: id.clone() }))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let reports = verify_cases(&cases, &plan);
    Ok(output::reports(format, &reports))
}

fn hankel(a: &HankelArgs, format: Format) -> Result<Out, Failure> {
    let p = a.point.params(0);
    let len = (2 * a.nmax + a.offset).saturating_sub(1);
    let seq = a.family.generate(len.saturating_sub(1), &p);
    let dets = (1..=a.nmax)
        .map(|n| hankel_det(&seq, n, a.offset))
        .collect::<Result<Vec<Rational>, _>>()?;
    Ok(output::determinants(format, a.family.name(), a.offset, &dets))
}
