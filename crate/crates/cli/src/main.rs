use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use vandint::divdiff::{divided_difference, vandermonde_value};
use vandint::funcs::AnalyticFunction;
use vandint::identity::{
    check_integral_identity_exact, check_integral_identity_numeric, check_integral_representation,
    check_vandermonde_integral, divided_difference_via_integral, lemma_suite, IdentityReport,
    LemmaKind,
};
use vandint::points::{PointSequence, Points};
use vandint::quad::{weighted_integral, Cubature};
use vandint::symfun::DEFAULT_SYMBOLIC_CAP;
use vandint::Error;

#[derive(Parser)]
#[command(
    name = "vandint",
    version,
    about = "Divided differences as Vandermonde-weighted integrals over sequential rectangles"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Gauss-Legendre nodes per axis.
    #[arg(long, global = true, env = "VANDINT_ORDER", default_value_t = 20)]
    order: usize,

    /// Relative tolerance of floating checks.
    #[arg(long, global = true, env = "VANDINT_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for random cases.
    #[arg(long, global = true, env = "VANDINT_SEED", default_value_t = 0)]
    seed: u64,

    /// Maximum number of integrand evaluations.
    #[arg(
        long,
        global = true,
        env = "VANDINT_BUDGET",
        default_value_t = 100_000_000
    )]
    budget: u64,

    /// Largest n for symbolic expansion of the Vandermonde polynomial.
    #[arg(long, global = true, default_value_t = DEFAULT_SYMBOLIC_CAP)]
    cap: usize,

    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Divided difference of a function at the given points.
    Divdiff {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        function: String,
        /// Compute through the Vandermonde-weighted integral instead of the
        /// table.
        #[arg(long)]
        via_integral: bool,
        /// Compare the integral route with the table and fail on
        /// disagreement.
        #[arg(long)]
        check: bool,
        /// Read decimal points exactly.
        #[arg(long)]
        symbolic: bool,
    },
    /// The weighted integral of f^(n)(t1 + ... + tn) over R(x).
    Integral {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        function: String,
    },
    /// Checks the integral identity at one point sequence.
    #[command(name = "theorem1")]
    Identity {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        function: Option<String>,
        /// Exact pipeline: polynomial f, points read as rationals.
        #[arg(long)]
        symbolic: bool,
    },
    /// Checks int_R(x) V(t) dt = V(x)/n! symbolically in x.
    #[command(name = "corollary")]
    VandermondeIntegral {
        /// A single n; without it, n = 1..=n-max.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Runs the exact suite of supporting identities.
    VerifyLemmas {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Restrict to one family (elementary-derivative, omega-derivative,
        /// vandermonde-partial, top-derivative, pure-sum, mixed-sum, newton,
        /// chain-rule, vertex-sum).
        #[arg(long)]
        only: Option<String>,
    },
    /// Maps x to the partial-sum points y, or back with --inverse.
    Transform {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "y")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "inverse")]
        y: Option<String>,
        #[arg(long, requires = "y")]
        inverse: bool,
    },
}

/// What a command produced: reports decide the exit status by their
/// verdicts, records are plain data.
enum Output {
    Reports(Vec<IdentityReport>),
    Record(Map<String, Json>, bool),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let common = cli.common.clone();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli.command, &common)) {
        Ok(output) => emit(output, common.format),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cubature(c: &Common) -> Cubature {
    Cubature {
        order: c.order,
        budget: c.budget,
    }
}

fn require_function(function: Option<String>) -> Result<AnalyticFunction, Error> {
    let text = function.ok_or_else(|| Error::Parse("--function is required".into()))?;
    AnalyticFunction::parse(&text)
}

fn run(command: Command, c: &Common) -> Result<Output, Error> {
    match command {
        Command::Divdiff {
            points,
            function,
            via_integral,
            check,
            symbolic,
        } => {
            let points = Points::parse(&points, symbolic)?;
            let f = AnalyticFunction::parse(&function)?;
            divdiff(points, &f, via_integral, check, c)
        }
        Command::Integral { x, function } => {
            let x = PointSequence::parse_float(&x)?;
            let f = AnalyticFunction::parse(&function)?;
            let result = weighted_integral(&x, &f, cubature(c))?;
            let mut rec = Map::new();
            rec.insert("x".into(), x.render().into());
            rec.insert("function".into(), f.to_string().into());
            rec.insert("value".into(), json!(result.value));
            rec.insert("order".into(), result.nodes_per_axis.into());
            rec.insert("evaluations".into(), result.function_evaluations.into());
            Ok(Output::Record(rec, true))
        }
        Command::Identity {
            x,
            function,
            symbolic,
        } => {
            let points = Points::parse(&x, symbolic)?;
            let f = require_function(function)?;
            let report = if symbolic {
                let Points::Exact(exact) = points else {
                    unreachable!("forced exact parse")
                };
                check_integral_identity_exact(&exact, &f, c.cap)?
            } else {
                check_integral_identity_numeric(&points.to_f64(), &f, cubature(c), c.tolerance)?
            };
            Ok(Output::Reports(vec![report]))
        }
        Command::VandermondeIntegral { n, n_max } => {
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..=n_max).collect(),
            };
            let reports = ns
                .into_iter()
                .map(|n| check_vandermonde_integral(n, c.cap))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output::Reports(reports))
        }
        Command::VerifyLemmas { n_max, only } => {
            let only = only.map(|s| s.parse::<LemmaKind>()).transpose()?;
            Ok(Output::Reports(lemma_suite(n_max, only, c.seed, c.cap)?))
        }
        Command::Transform { x, y, inverse } => {
            let text = if inverse { y } else { x }.expect("clap enforces the argument");
            transform(Points::parse(&text, false)?, inverse)
        }
    }
}

fn divdiff(
    points: Points,
    f: &AnalyticFunction,
    via_integral: bool,
    check: bool,
    c: &Common,
) -> Result<Output, Error> {
    let mut rec = Map::new();
    rec.insert("points".into(), points.render().into());
    rec.insert("function".into(), f.to_string().into());
    let floats = points.to_f64();
    if check {
        let report = check_integral_representation(&floats, f, cubature(c), c.tolerance)?;
        return Ok(Output::Reports(vec![report]));
    }
    if via_integral {
        let value = divided_difference_via_integral(&floats, f, cubature(c))?;
        rec.insert("route".into(), "integral".into());
        rec.insert("value".into(), json!(value));
        return Ok(Output::Record(rec, true));
    }
    rec.insert("route".into(), "table".into());
    let warning = match &points {
        Points::Exact(p) if f.is_polynomial() => {
            let dd = divided_difference(p, f)?;
            rec.insert(
                "value".into(),
                vandint::exact::format_rational(&dd.value).into(),
            );
            dd.warning
        }
        _ => {
            let dd = divided_difference(&floats, f)?;
            rec.insert("value".into(), json!(dd.value));
            dd.warning
        }
    };
    if let Some(w) = warning {
        eprintln!(
            "warning: smallest gap {:e} is tiny relative to the span {:e}; expect cancellation",
            w.min_gap, w.span
        );
    }
    Ok(Output::Record(rec, true))
}

fn transform(points: Points, inverse: bool) -> Result<Output, Error> {
    let (from, to) = if inverse { ("y", "x") } else { ("x", "y") };
    let mut rec = Map::new();
    let (src, dst, v_src, v_dst, equal) = match points {
        Points::Exact(p) => {
            let q = if inverse { p.x_from_y() } else { p.y_from_x() };
            let (a, b) = (vandermonde_value(p.values()), vandermonde_value(q.values()));
            let fmt = vandint::exact::format_rational;
            (
                p.render(),
                q.render(),
                Json::from(fmt(&a)),
                Json::from(fmt(&b)),
                a == b,
            )
        }
        Points::Float(p) => {
            let q = if inverse { p.x_from_y() } else { p.y_from_x() };
            let (a, b) = (vandermonde_value(p.values()), vandermonde_value(q.values()));
            let equal = (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
            (p.render(), q.render(), json!(a), json!(b), equal)
        }
    };
    rec.insert(from.into(), src.into());
    rec.insert(to.into(), dst.into());
    rec.insert(format!("V({from})"), v_src);
    rec.insert(format!("V({to})"), v_dst);
    rec.insert("vandermonde_equal".into(), equal.into());
    Ok(Output::Record(rec, equal))
}

fn write_csv<I, R>(header: I, rows: impl IntoIterator<Item = R>) -> csv::Result<()>
where
    I: IntoIterator,
    I::Item: AsRef<[u8]>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn plain(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(output: Output, format: Format) -> ExitCode {
    let passed = match output {
        Output::Reports(reports) => {
            match format {
                Format::Json => reports.iter().for_each(|r| println!("{}", r.to_json())),
                Format::Csv => {
                    let rows = reports.iter().map(IdentityReport::csv_record);
                    if let Err(e) = write_csv(IdentityReport::CSV_COLUMNS, rows) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                Format::Text => {
                    reports.iter().for_each(|r| println!("{}", r.to_text()));
                    let failed = reports.iter().filter(|r| !r.passed).count();
                    println!("{} checks, {failed} failed", reports.len());
                }
            }
            reports.iter().all(|r| r.passed)
        }
        Output::Record(rec, passed) => {
            match format {
                Format::Json => println!("{}", Json::Object(rec)),
                Format::Csv => {
                    let values: Vec<String> = rec.values().map(plain).collect();
                    if let Err(e) = write_csv(rec.keys(), [values]) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                Format::Text => rec.iter().for_each(|(k, v)| println!("{k}: {}", plain(v))),
            }
            passed
        }
    };
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
