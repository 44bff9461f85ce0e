//! Command-line front end: argument parsing, run configuration and
//! rendering of every core operation as text, JSON or CSV.

use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use spectra_core::attractor::{analyze, lambda_from_rational, rasterize, ConnectivityOptions, RasterDigits};
use spectra_core::counting::{count_distinct, count_distinct_numeric, growth_ratio};
use spectra_core::criteria::{
    empirical_crosscheck, error_exit_code, select_root, verdict_with, Conclusion, RootSelector,
    VerdictOptions,
};
use spectra_core::fixtures::{check_printed, FIXTURES};
use spectra_core::heightsearch::{find_height_one_multiple_with, SearchOptions};
use spectra_core::polyalg::interval::{decimal, parse_rational, Interval};
use spectra_core::polyalg::{classify, IntPolynomial, DEFAULT_BUDGET};
use spectra_core::spectrum::{
    enumerate_spectrum, gap_stats, min_gap, pigeonhole_check, smallest_positive_lambda, DigitSet,
};
use spectra_core::Error;

pub const SCHEMA_VERSION: u32 = 1;
pub const BUDGET_ENV: &str = "SPECTRA_BUDGET_BITS";
pub const DEFAULT_SEED: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Digits {
    Binary,
    Signed,
    PlusMinus,
}

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Power-sum spectra of algebraic numbers in (1, 2)")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Precision budget in bits (overrides SPECTRA_BUDGET_BITS).
    #[arg(long, global = true)]
    budget: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RootArgs {
    /// Integer polynomial, e.g. "x^4 - x - 1".
    #[arg(long)]
    poly: String,
    /// Position of q among the real roots in ascending order.
    #[arg(long, conflicts_with = "root_interval")]
    root_index: Option<usize>,
    /// Closed interval "a,b" holding exactly one real root.
    #[arg(long)]
    root_interval: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pisot, Perron, Salem and anti-Pisot flags with conjugate moduli.
    Classify(RootArgs),
    /// Decide l(q) = 0, L(q) = 0 or uniform discreteness.
    Verdict {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long, default_value_t = 20)]
        dmax: usize,
        /// Also run the finite-n cross-check up to this n.
        #[arg(long)]
        crosscheck: Option<usize>,
    },
    /// Sorted distinct digit sums with gap statistics.
    Spectrum {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Digits::Binary)]
        digits: Digits,
        /// Fraction of the finalized gaps forming the tail window.
        #[arg(long, default_value = "1/4")]
        tail: String,
    },
    /// Number of distinct sums z_n.
    Count {
        #[arg(long, required_unless_present = "beta")]
        poly: Option<String>,
        #[arg(long)]
        n: usize,
        /// Print z_k and z_k / q^k for every k <= n.
        #[arg(long)]
        series: bool,
        #[arg(long, conflicts_with = "root_interval")]
        root_index: Option<usize>,
        #[arg(long)]
        root_interval: Option<String>,
        /// Numeric count at a complex "re,im" instead of a polynomial.
        #[arg(long, conflicts_with = "poly")]
        beta: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Smallest positive element of Lambda_n(q).
    LambdaMin {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        n: usize,
        /// First n of the table (defaults to n).
        #[arg(long)]
        from: Option<usize>,
    },
    /// Connectivity, interior criterion and raster of A_lambda.
    Attractor {
        /// Parameter "re,im" as exact decimals or fractions.
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = spectra_core::attractor::DEFAULT_CONNECTIVITY_DEPTH)]
        depth: usize,
        /// Raster side in pixels; 0 skips rendering.
        #[arg(long, default_value_t = 0)]
        pixels: usize,
        #[arg(long, default_value_t = spectra_core::attractor::DEFAULT_RASTER_DEPTH)]
        raster_depth: usize,
        /// Binary PPM (P5) destination for the raster.
        #[arg(long)]
        ppm: Option<PathBuf>,
        /// Render the centred {-1,1} copy instead of the {0,1} attractor.
        #[arg(long)]
        centred: bool,
    },
    /// Smallest-degree {-1,0,1} multiple of a polynomial.
    Search {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 20)]
        dmax: usize,
        #[arg(long)]
        prefilter: bool,
        #[arg(long, default_value_t = 64)]
        cofactor_cap: i64,
    },
    /// Regression table for the bundled worked examples.
    Examples,
}

/// Resolved settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision_budget: u32,
    pub seed: u64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { precision_budget: DEFAULT_BUDGET, seed: DEFAULT_SEED, output_format: Format::Text, output_path: None }
    }
}

impl RunConfig {
    /// Flag beats environment beats default.
    fn resolve(common: &Common, env_budget: Option<&str>) -> std::result::Result<RunConfig, String> {
        let precision_budget = match (common.budget, env_budget) {
            (Some(b), _) => b,
            (None, Some(s)) => {
                s.trim().parse::<u32>().map_err(|_| format!("{BUDGET_ENV} must be an integer, got {s:?}"))?
            }
            (None, None) => DEFAULT_BUDGET,
        };
        if precision_budget < 64 {
            return Err("precision budget must be at least 64 bits".into());
        }
        Ok(RunConfig {
            precision_budget,
            seed: common.seed,
            output_format: common.format,
            output_path: common.output.clone(),
        })
    }
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: error_exit_code(&e), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = std::result::Result<(String, i32), Failure>;

/// Runs the tool with `SPECTRA_BUDGET_BITS` from the process environment,
/// writing the report to stdout.
pub fn run(argv: Vec<String>) -> i32 {
    let env = std::env::var(BUDGET_ENV).ok();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_with(argv, env.as_deref(), &mut out)
}

/// Runs the tool with an explicit budget environment value and sink.
pub fn run_with(argv: Vec<String>, env_budget: Option<&str>, out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(std::io::stderr(), "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.common, env_budget) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli.command, &cfg) {
        Ok((text, code)) => {
            let written = match &cfg.output_path {
                Some(p) => std::fs::write(p, text.as_bytes()).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    EXIT_FAILURE
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Outcome {
    match cmd {
        Command::Classify(root) => cmd_classify(root, cfg),
        Command::Verdict { root, dmax, crosscheck } => cmd_verdict(root, *dmax, *crosscheck, cfg),
        Command::Spectrum { root, n, digits, tail } => cmd_spectrum(root, *n, *digits, tail, cfg),
        Command::Count { poly, n, series, root_index, root_interval, beta, tol } => {
            cmd_count(poly.as_deref(), *n, *series, *root_index, root_interval.as_deref(), beta.as_deref(), *tol, cfg)
        }
        Command::LambdaMin { root, n, from } => cmd_lambda_min(root, *n, from.unwrap_or(*n), cfg),
        Command::Attractor { lambda, depth, pixels, raster_depth, ppm, centred } => {
            cmd_attractor(lambda, *depth, *pixels, *raster_depth, ppm.as_ref(), *centred, cfg)
        }
        Command::Search { poly, dmax, prefilter, cofactor_cap } => {
            cmd_search(poly, *dmax, *prefilter, *cofactor_cap, cfg)
        }
        Command::Examples => cmd_examples(cfg),
    }
}

fn envelope(command: &str, result: Value) -> String {
    let v = json!({"schema_version": SCHEMA_VERSION, "command": command, "result": result});
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}

fn no_csv(command: &str) -> Failure {
    usage(format!("{command} has no csv form; use --format text or json"))
}

fn parse_poly(text: &str) -> std::result::Result<IntPolynomial, Failure> {
    text.parse::<IntPolynomial>().map_err(|e| usage(format!("cannot parse polynomial {text:?}: {e}")))
}

fn parse_pair(text: &str, what: &str) -> std::result::Result<(num_rational::BigRational, num_rational::BigRational), Failure> {
    let (a, b) = text.split_once(',').ok_or_else(|| usage(format!("{what} must be \"a,b\"")))?;
    let a = parse_rational(a.trim()).ok_or_else(|| usage(format!("bad number {a:?} in {what}")))?;
    let b = parse_rational(b.trim()).ok_or_else(|| usage(format!("bad number {b:?} in {what}")))?;
    Ok((a, b))
}

fn selector(index: Option<usize>, interval: Option<&str>) -> std::result::Result<RootSelector, Failure> {
    Ok(match (index, interval) {
        (Some(k), _) => RootSelector::Index(k),
        (None, Some(text)) => {
            let (a, b) = parse_pair(text, "root interval")?;
            if a > b {
                return Err(usage("root interval must have a <= b"));
            }
            RootSelector::Interval(a, b)
        }
        (None, None) => RootSelector::Largest,
    })
}

fn root_selector(root: &RootArgs) -> std::result::Result<RootSelector, Failure> {
    selector(root.root_index, root.root_interval.as_deref())
}

fn enclosure(iv: &Interval) -> Value {
    json!([decimal(&iv.lo, DIGITS), decimal(&iv.hi, DIGITS)])
}

fn ordering_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn cdec(z: Complex64) -> Value {
    json!({"re": format!("{:.12}", z.re), "im": format!("{:.12}", z.im)})
}

fn cmd_classify(root: &RootArgs, cfg: &RunConfig) -> Outcome {
    let f = parse_poly(&root.poly)?.squarefree_part().primitive();
    let q = select_root(&f, &root_selector(root)?, cfg.precision_budget)?;
    let c = classify(&f, &q)?;
    let conj: Vec<Value> = c
        .conjugates
        .iter()
        .map(|k| {
            json!({
                "approx": cdec(k.approx),
                "real": k.real,
                "modulus": enclosure(&k.modulus()),
                "modulus_vs_one": ordering_str(k.vs_one.ordering),
                "modulus_vs_q": ordering_str(k.vs_q.ordering),
                "q_times_modulus_vs_one": ordering_str(k.vs_inv_q.ordering),
            })
        })
        .collect();
    match cfg.output_format {
        Format::Json => Ok((
            envelope(
                "classify",
                json!({
                    "poly": f.to_string(),
                    "q": enclosure(&c.q),
                    "algebraic_integer": c.is_algebraic_integer,
                    "pisot": c.is_pisot,
                    "perron": c.is_perron,
                    "salem": c.is_salem,
                    "anti_pisot": c.is_anti_pisot,
                    "minimality_verified": c.minimality_verified,
                    "conjugates": conj,
                }),
            ),
            EXIT_OK,
        )),
        Format::Csv => Err(no_csv("classify")),
        Format::Text => {
            let mut s = format!("poly: {f}\nq: {}\n", decimal(&c.q.mid(), DIGITS));
            for (name, flag) in [
                ("algebraic integer", c.is_algebraic_integer),
                ("pisot", c.is_pisot),
                ("perron", c.is_perron),
                ("salem", c.is_salem),
                ("anti-pisot", c.is_anti_pisot),
            ] {
                s.push_str(&format!("{name}: {flag}\n"));
            }
            for k in &c.conjugates {
                s.push_str(&format!(
                    "conjugate {:+.10} {:+.10}i  |alpha| {}  vs 1: {}  q|alpha| vs 1: {}\n",
                    k.approx.re,
                    k.approx.im,
                    decimal(&k.modulus().mid(), 12),
                    ordering_str(k.vs_one.ordering),
                    ordering_str(k.vs_inv_q.ordering),
                ));
            }
            if !c.minimality_verified {
                s.push_str("caveat: minimal polynomial not verified\n");
            }
            Ok((s, EXIT_OK))
        }
    }
}

fn cmd_verdict(root: &RootArgs, dmax: usize, crosscheck: Option<usize>, cfg: &RunConfig) -> Outcome {
    let f = parse_poly(&root.poly)?;
    let sel = root_selector(root)?;
    let opts = VerdictOptions { budget: cfg.precision_budget, dmax, ..VerdictOptions::default() };
    let v = verdict_with(&f, &sel, &opts)?;
    let check = match crosscheck {
        Some(n) => {
            let q = select_root(&v.poly, &sel, cfg.precision_budget)?;
            Some(empirical_crosscheck(&v.poly, &q, &v, n)?)
        }
        None => None,
    };
    let code = v.exit_code();
    match cfg.output_format {
        Format::Json => {
            let mut r = v.to_json();
            if let Some(c) = &check {
                r["crosscheck"] = c.to_json();
            }
            Ok((envelope("verdict", r), code))
        }
        Format::Csv => Err(no_csv("verdict")),
        Format::Text => {
            let mut s = format!("poly: {}\nq: {}\nconclusion: {}\n", v.poly, decimal(&v.q.mid(), DIGITS), v.conclusion);
            for r in &v.rules_applied {
                s.push_str(&format!("{} ({}): {}\n", r.rule, r.conclusion, r.rule.citation()));
            }
            for c in &v.caveats {
                s.push_str(&format!("caveat: {c}\n"));
            }
            if let Some(c) = &check {
                s.push_str(&format!("crosscheck: {}\n", c.trend));
                for t in &c.tensions {
                    s.push_str(&format!("tension: {t}\n"));
                }
            }
            Ok((s, code))
        }
    }
}

fn digit_set(d: Digits) -> DigitSet {
    match d {
        Digits::Binary => DigitSet::binary(),
        Digits::Signed => DigitSet::signed(),
        Digits::PlusMinus => DigitSet::plus_minus(),
    }
}

fn cmd_spectrum(root: &RootArgs, n: usize, digits: Digits, tail: &str, cfg: &RunConfig) -> Outcome {
    let f = parse_poly(&root.poly)?.squarefree_part().primitive();
    let q = select_root(&f, &root_selector(root)?, cfg.precision_budget)?;
    let tail = parse_rational(tail).ok_or_else(|| usage(format!("bad tail fraction {tail:?}")))?;
    let r = enumerate_spectrum(&f, &q, n, &digit_set(digits))?;
    if cfg.output_format == Format::Csv {
        return Ok((r.to_csv()?, EXIT_OK));
    }
    let i = min_gap(&r)?;
    let stats = match gap_stats(&r, &tail) {
        Ok(s) => Some(s),
        Err(Error::EmptyTail(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let pigeonhole = pigeonhole_check(&r)?;
    match cfg.output_format {
        Format::Json => Ok((
            envelope(
                "spectrum",
                json!({
                    "poly": f.to_string(),
                    "q": enclosure(&q.real_interval()),
                    "n": n,
                    "digits": r.digitset.to_string(),
                    "count": r.len(),
                    "finalized_count": r.finalized_len(),
                    "min_gap": decimal(&r.gaps[i].mid(), DIGITS),
                    "min_gap_enclosure": enclosure(&r.gaps[i]),
                    "min_gap_index": i,
                    "pigeonhole": pigeonhole,
                    "gap_stats": stats.map(|s| s.to_json()),
                }),
            ),
            EXIT_OK,
        )),
        _ => {
            let mut s = format!(
                "poly: {f}\nn: {n}\ndigits: {}\ncount: {}\nfinalized: {}\nmin gap: {} (index {i})\npigeonhole: {}\n",
                r.digitset,
                r.len(),
                r.finalized_len(),
                decimal(&r.gaps[i].mid(), DIGITS),
                if pigeonhole { "pass" } else { "fail" },
            );
            if let Some(st) = stats {
                s.push_str(&format!(
                    "tail min gap: {}\ntail max gap: {}\n",
                    decimal(&st.tail_min_gap.mid(), DIGITS),
                    decimal(&st.max_gap_tail.mid(), DIGITS)
                ));
            }
            Ok((s, EXIT_OK))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    poly: Option<&str>,
    n: usize,
    series: bool,
    root_index: Option<usize>,
    root_interval: Option<&str>,
    beta: Option<&str>,
    tol: f64,
    cfg: &RunConfig,
) -> Outcome {
    if let Some(b) = beta {
        let (re, im) = parse_pair(b, "beta")?;
        let z = Complex64::new(
            spectra_core::polyalg::interval::to_f64(&re),
            spectra_core::polyalg::interval::to_f64(&im),
        );
        let c = count_distinct_numeric(z, n, tol)?;
        return Ok(match cfg.output_format {
            Format::Json => (envelope("count", json!({"beta": cdec(z), "n": n, "tol": tol, "z_n": c})), EXIT_OK),
            Format::Csv => (format!("n,z_n\n{n},{c}\n"), EXIT_OK),
            Format::Text => (format!("{c}\n"), EXIT_OK),
        });
    }
    let f = parse_poly(poly.expect("clap requires poly or beta"))?.squarefree_part().primitive();
    if !series {
        let c = count_distinct(&f, n)?;
        return Ok(match cfg.output_format {
            Format::Json => (envelope("count", json!({"poly": f.to_string(), "n": n, "z_n": c})), EXIT_OK),
            Format::Csv => (format!("n,z_n\n{n},{c}\n"), EXIT_OK),
            Format::Text => (format!("{c}\n"), EXIT_OK),
        });
    }
    let q = select_root(&f, &selector(root_index, root_interval)?, cfg.precision_budget)?;
    let s = growth_ratio(&f, &q, n)?;
    Ok(match cfg.output_format {
        Format::Json => {
            let mut r = s.to_json();
            r["poly"] = json!(f.to_string());
            r["q"] = enclosure(&q.real_interval());
            (envelope("count", r), EXIT_OK)
        }
        _ => (s.to_csv(), EXIT_OK),
    })
}

fn cmd_lambda_min(root: &RootArgs, n: usize, from: usize, cfg: &RunConfig) -> Outcome {
    if from < 1 || from > n {
        return Err(usage("need 1 <= from <= n"));
    }
    let f = parse_poly(&root.poly)?.squarefree_part().primitive();
    let q = select_root(&f, &root_selector(root)?, cfg.precision_budget)?;
    let mut rows = Vec::new();
    for k in from..=n {
        rows.push(smallest_positive_lambda(&f, &q, k)?);
    }
    let digits = |w: &[i64]| w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    Ok(match cfg.output_format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|l| {
                    json!({
                        "n": l.n,
                        "value": decimal(&l.value.mid(), DIGITS),
                        "enclosure": enclosure(&l.value),
                        "witness": l.witness,
                        "relations_found": l.relations_found,
                    })
                })
                .collect();
            (envelope("lambda-min", json!({"poly": f.to_string(), "q": enclosure(&q.real_interval()), "rows": rows})), EXIT_OK)
        }
        Format::Csv => {
            let mut s = String::from("n,value_decimal,witness\n");
            for l in &rows {
                s.push_str(&format!("{},{},{}\n", l.n, decimal(&l.value.mid(), DIGITS), digits(&l.witness)));
            }
            (s, EXIT_OK)
        }
        Format::Text => {
            let mut s = String::new();
            for l in &rows {
                s.push_str(&format!("n={} {} [{}]\n", l.n, decimal(&l.value.mid(), DIGITS), digits(&l.witness)));
            }
            (s, EXIT_OK)
        }
    })
}

fn cmd_attractor(
    lambda: &str,
    depth: usize,
    pixels: usize,
    raster_depth: usize,
    ppm: Option<&PathBuf>,
    centred: bool,
    cfg: &RunConfig,
) -> Outcome {
    let (re, im) = parse_pair(lambda, "lambda")?;
    let lam = lambda_from_rational(&re, &im)?;
    let opts = ConnectivityOptions { depth, ..ConnectivityOptions::default() };
    let a = analyze(&lam, &opts)?;
    let raster = if pixels > 0 {
        let digits = if centred { RasterDigits::Signed } else { RasterDigits::Binary };
        let r = rasterize(lam.approx(), raster_depth, pixels, digits)?;
        if let Some(path) = ppm {
            std::fs::write(path, r.to_ppm()).map_err(|e| Failure { code: EXIT_FAILURE, message: e.to_string() })?;
        }
        Some(r)
    } else {
        if ppm.is_some() {
            return Err(usage("--ppm needs --pixels > 0"));
        }
        None
    };
    Ok(match cfg.output_format {
        Format::Json => {
            let mut r = a.to_json();
            if let Some(ra) = &raster {
                r["raster"] = json!({
                    "pixels": ra.size,
                    "depth": raster_depth,
                    "marked": ra.marked(),
                    "center": cdec(ra.center),
                    "half_width": format!("{:.12}", ra.half_width),
                    "ppm": ppm.map(|p| p.display().to_string()),
                });
            }
            (envelope("attractor", r), EXIT_OK)
        }
        Format::Csv => return Err(no_csv("attractor")),
        Format::Text => {
            let mut s = format!(
                "lambda: {:+.12} {:+.12}i\nconnectivity: {}\ninterior criterion: {}\n",
                a.lambda.re,
                a.lambda.im,
                a.connectivity.label(),
                a.interior.holds
            );
            match a.lower_bound_clause {
                Some(c) => s.push_str(&format!("count lower bound: clause {c}\n")),
                None => s.push_str("count lower bound: not applicable\n"),
            }
            if let Some(ra) = &raster {
                s.push_str(&format!("raster: {}x{} marked {}\n", ra.size, ra.size, ra.marked()));
            }
            (s, EXIT_OK)
        }
    })
}

fn cmd_search(poly: &str, dmax: usize, prefilter: bool, cofactor_cap: i64, cfg: &RunConfig) -> Outcome {
    let f = parse_poly(poly)?;
    let opts = SearchOptions { cofactor_cap, prefilter, ..SearchOptions::default() };
    let r = find_height_one_multiple_with(&f, dmax, &opts)?;
    Ok(match cfg.output_format {
        Format::Json => (envelope("search", r.to_json()), EXIT_OK),
        Format::Csv => return Err(no_csv("search")),
        Format::Text => {
            let mut s = format!("status: {:?}\n", r.status);
            if let Some(w) = &r.witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            if let Some(c) = &r.cofactor {
                s.push_str(&format!("cofactor: {c}\n"));
            }
            if let Some(c) = &r.filter_certificate {
                s.push_str(&format!("filter: three-root product {} < 0.32476\n", decimal(&c.product.mid(), 12)));
            }
            s.push_str(&format!("nodes: {}\n", r.nodes));
            (s, EXIT_OK)
        }
    })
}

/// One row of the worked-example regression.
#[derive(Clone, Debug)]
pub struct ExampleRow {
    pub example: u8,
    pub tag: &'static str,
    pub expected: Conclusion,
    pub got: Option<Conclusion>,
    pub rules_expected: String,
    pub rules_got: String,
    pub printed_pass: usize,
    pub printed_total: usize,
    pub pass: bool,
}

fn rules_str<T: std::fmt::Display>(rs: &[T]) -> String {
    rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("+")
}

/// Verdicts and printed approximations for every bundled fixture.
pub fn example_rows(budget: u32) -> Vec<ExampleRow> {
    let opts = VerdictOptions { budget, ..VerdictOptions::default() };
    FIXTURES
        .iter()
        .map(|fx| {
            let v = verdict_with(&fx.polynomial(), &RootSelector::Largest, &opts).ok();
            let printed = check_printed(fx).unwrap_or_default();
            let printed_pass = printed.iter().filter(|p| p.pass).count();
            let got = v.as_ref().map(|v| v.conclusion);
            let rules_got = v.as_ref().map(|v| rules_str(&v.rule_ids())).unwrap_or_else(|| "error".into());
            let rules_expected = rules_str(fx.rules);
            let pass = got == Some(fx.conclusion)
                && rules_got == rules_expected
                && printed_pass == fx.printed.len()
                && printed.len() == fx.printed.len();
            ExampleRow {
                example: fx.example,
                tag: fx.tag,
                expected: fx.conclusion,
                got,
                rules_expected,
                rules_got,
                printed_pass,
                printed_total: fx.printed.len(),
                pass,
            }
        })
        .collect()
}

/// Examples whose fixtures all pass, and the number of examples.
pub fn examples_passed(rows: &[ExampleRow]) -> (usize, usize) {
    let mut ids: Vec<u8> = rows.iter().map(|r| r.example).collect();
    ids.dedup();
    let passed = ids.iter().filter(|&&id| rows.iter().filter(|r| r.example == id).all(|r| r.pass)).count();
    (passed, ids.len())
}

fn cmd_examples(cfg: &RunConfig) -> Outcome {
    let rows = example_rows(cfg.precision_budget);
    let (passed, total) = examples_passed(&rows);
    let code = if passed == total { EXIT_OK } else { EXIT_FAILURE };
    let got = |r: &ExampleRow| r.got.map(|c| c.as_str()).unwrap_or("error");
    let text = match cfg.output_format {
        Format::Json => {
            let rs: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "example": r.example,
                        "tag": r.tag,
                        "expected": r.expected.as_str(),
                        "got": got(r),
                        "rules_expected": r.rules_expected,
                        "rules_got": r.rules_got,
                        "printed_pass": r.printed_pass,
                        "printed_total": r.printed_total,
                        "pass": r.pass,
                    })
                })
                .collect();
            envelope("examples", json!({"rows": rs, "passed": passed, "total": total}))
        }
        Format::Csv => {
            let mut s = String::from("tag,expected,got,rules_expected,rules_got,printed,pass\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}/{},{}\n",
                    r.tag,
                    r.expected,
                    got(r),
                    r.rules_expected,
                    r.rules_got,
                    r.printed_pass,
                    r.printed_total,
                    if r.pass { "pass" } else { "fail" }
                ));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:<4} {:<14} {:<14} {:<10} {:<10} {:<8} {}\n",
                "ex", "expected", "got", "rules", "got rules", "printed", "result"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:<4} {:<14} {:<14} {:<10} {:<10} {:<8} {}\n",
                    r.tag,
                    r.expected.as_str(),
                    got(r),
                    if r.rules_expected.is_empty() { "-" } else { &r.rules_expected },
                    if r.rules_got.is_empty() { "-" } else { &r.rules_got },
                    format!("{}/{}", r.printed_pass, r.printed_total),
                    if r.pass { "PASS" } else { "FAIL" }
                ));
            }
            s.push_str(&format!("{passed}/{total} pass\n"));
            s
        }
    };
    Ok((text, code))
}
