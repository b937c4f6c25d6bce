//! Command-line front end.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cochran::{
    alpha_series_with, beta_bar, cochran_series_with, hat_cochran_with, pipeline_bands, theorem_a_check_with,
    CochranConfig, CochranSeries,
};
use crate::diagram::{parse_pd, serialize_pd, Diagram, Side};
use crate::error::Error;
use crate::families::{corpus, generate, FamilyLink};
use crate::series::{
    berlekamp_massey_bounded, central_binomial_series, factorial_series, hankel_ranks, parse_rational_list,
    poly_div_series, to_rationals,
};
use crate::skein::{conway_with, ConwayConfig, ConwayPoly, DEFAULT_BUDGET};
use crate::surgery::BandSpec;
use crate::wqo::{embeds, find_embedded_pair, mu_audit, MuTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "betalink", version, about = "Conway polynomials and derived invariants of two-component links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute an invariant of one diagram.
    Invariant {
        kind: InvariantKind,
        /// PD file, `-` for stdin, or `family:W:1,0,-1`.
        source: String,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Run a consistency check over diagrams (the family corpus if none given).
    Verify {
        check: Check,
        sources: Vec<String>,
        /// Number of distinct bands for band independence.
        #[arg(long, default_value_t = 2)]
        bands: usize,
        #[command(flatten)]
        run: RunConfig,
    },
    /// Series and recurrence tools.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
    },
    /// Multi-index embedding tools.
    Wqo {
        #[command(subcommand)]
        op: WqoOp,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
    },
    /// Print a family member as PD text.
    Family {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Truncation order N of the series.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    /// Node budget of the skein recursion.
    #[arg(long, env = "BETALINK_BUDGET", default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// `auto` or a band as JSON.
    #[arg(long, default_value = "auto")]
    pub band: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Edge of component 0 carrying the pushoff twists (default: first that
    /// admits a band).
    #[arg(long)]
    pub twist_site: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantKind {
    Lk,
    Writhe,
    Conway,
    SatoLevine,
    Cochran,
    CochranHat,
    Colorings,
    /// Bands the pipeline can use, for `--band`.
    Bands,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    TheoremA,
    BandIndependence,
    Symmetries,
    Rationality,
}

#[derive(Subcommand, Debug)]
pub enum SeriesOp {
    /// Expand NUM/DEN as a power series.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        #[arg(long)]
        order: usize,
    },
    /// Shortest linear recurrence of a coefficient list.
    Bm {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Ranks of the leading Hankel matrices.
    Hankel {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Reference series: `central-binomial` or `factorial`.
    Fixtures {
        name: String,
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WqoOp {
    /// Whether I is a subsequence of J (comma lists).
    Embeds { i: String, j: String },
    /// Least embedded pair in a sequence of multi-indices.
    Pair { seq: Vec<String> },
    /// Residue audit of a table `{"entries":[{"I":[..],"mu":..}]}` (file or `-`).
    MuAudit { table: String },
}

/// What a command produced: text for the terminal and an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Topology(_) => EXIT_INPUT,
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_PRECONDITION,
    }
}

fn fail(e: Error) -> Outcome {
    let mut stderr = format!("error: {e}");
    if let Error::Syntax { pos, .. } = &e {
        stderr.push_str(&format!(" (position {pos})"));
    }
    Outcome { code: exit_code(&e), stdout: String::new(), stderr }
}

fn input_error(msg: String) -> Error {
    Error::Syntax { pos: 0, msg }
}

fn read_text(source: &str) -> Result<String, Error> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(source).map_err(|e| input_error(format!("{source}: {e}")))
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().map_err(|_| input_error(format!("not an integer: {s:?}"))))
        .collect()
}

fn parse_index(text: &str) -> Result<Vec<u32>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u32>().map_err(|_| input_error(format!("not a letter: {s:?}"))))
        .collect()
}

/// Loads a diagram from a file, stdin, or a `family:NAME:params` reference.
pub fn load_source(source: &str) -> Result<(String, Diagram), Error> {
    if let Some(rest) = source.strip_prefix("family:") {
        let (name, params) = rest.split_once(':').unwrap_or((rest, ""));
        let link = generate(name, &parse_ints(params)?)?;
        return Ok((link.name, link.diagram));
    }
    Ok((source.to_string(), parse_pd(&read_text(source)?)?))
}

fn conway_config(run: &RunConfig) -> ConwayConfig {
    ConwayConfig { budget: run.budget, ..ConwayConfig::default() }
}

fn cochran_config(run: &RunConfig) -> Result<CochranConfig, Error> {
    let band = if run.band == "auto" { None } else { Some(BandSpec::from_json(&run.band)?) };
    Ok(CochranConfig {
        order: run.order as usize,
        band,
        side: Side::Left,
        twist_site: run.twist_site,
        conway: conway_config(run),
    })
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn render(format: Format, value: Value, text: String) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text => text,
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Invariant { kind, source, run } => {
            let workers = run.workers;
            with_workers(workers, move || cmd_invariant(kind, &source, &run))
        }
        Command::Verify { check, sources, bands, run } => {
            let workers = run.workers;
            return with_workers(workers, move || cmd_verify(check, &sources, bands, &run));
        }
        Command::Series { op, format } => cmd_series(op, format),
        Command::Wqo { op, format } => cmd_wqo(op, format),
        Command::Family { name, params, format } => cmd_family(&name, &params, format),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => fail(e),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn cochran_text(s: &CochranSeries) -> String {
    let betas: Vec<String> = s.betas().iter().map(|b| b.to_string()).collect();
    let bars = beta_bar_lines(&s.betas());
    let shown = &bars[..bars.len().min(4)];
    let kink = match s.kink {
        Some(k) => format!("kink: edge {} {}\n", k.edge, json!(k.side).as_str().unwrap_or_default()),
        None => String::new(),
    };
    format!(
        "betas: [{}]\nseries: {}\nN: {}\nband: {}\n{kink}{}\n",
        betas.join(", "),
        s.series,
        s.order(),
        s.band.to_json(),
        shown.join("\n")
    )
}

pub fn cmd_invariant(kind: InvariantKind, source: &str, run: &RunConfig) -> Result<String, Error> {
    let (name, d) = load_source(source)?;
    let cfg = cochran_config(run)?;
    let two = || -> Result<(), Error> {
        if d.num_components() != 2 {
            return Err(Error::Precondition(format!("need two components, got {}", d.num_components())));
        }
        Ok(())
    };
    let (value, text) = match kind {
        InvariantKind::Lk => {
            two()?;
            let lk = d.linking_number(0, 1)?;
            (json!(lk), format!("{lk}\n"))
        }
        InvariantKind::Writhe => {
            let w: Vec<i64> = (0..d.num_components()).map(|i| d.writhe(i)).collect::<Result<_, _>>()?;
            let txt: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            (json!(w), format!("{}\n", txt.join(" ")))
        }
        InvariantKind::Conway => {
            let p: ConwayPoly = conway_with(&d, &cfg.conway)?;
            (json!({ "coeffs": p, "text": p.to_string() }), format!("{p}\n"))
        }
        InvariantKind::SatoLevine => {
            two()?;
            let lk = d.linking_number(0, 1)?;
            if lk != 0 {
                return Err(Error::Precondition(format!("linking number is {lk}, expected 0")));
            }
            let a = alpha_series_with(&d, 1, &cfg.conway)?.coeff(1).to_integer();
            (json!(crate::json::big_number(&a)), format!("{a}\n"))
        }
        InvariantKind::Cochran => {
            let s = cochran_series_with(&d, &cfg)?;
            (s.to_json(), cochran_text(&s))
        }
        InvariantKind::CochranHat => {
            if cfg.band.is_none() {
                return Err(Error::Precondition("cochran-hat depends on the band; pass --band '{json}'".into()));
            }
            let s = hat_cochran_with(&d, &cfg)?;
            let mut v = s.to_json();
            v["z1"] = crate::json::rational_value(&s.quotient.coeff(1));
            (v, cochran_text(&s))
        }
        InvariantKind::Bands => {
            let bands = pipeline_bands(&d, Side::Left, run.twist_site.unwrap_or(0))?;
            let text: String = bands.iter().map(|b| format!("{}\n", b.to_json())).collect();
            (json!(bands), text)
        }
        InvariantKind::Colorings => {
            let c = d.count_3_colorings();
            (json!(crate::json::big_number(&BigInt::from(c.clone()))), format!("{c}\n"))
        }
    };
    let value = json!({ "source": name, "invariant": value_name(kind), "value": value });
    Ok(render(run.format, value, text))
}

fn default_corpus() -> Result<Vec<(String, Diagram)>, Error> {
    Ok(corpus(2, -1..=1)?.into_iter().map(|l: FamilyLink| (l.name, l.diagram)).collect())
}

fn verify_one(check: Check, d: &Diagram, bands: usize, cfg: &CochranConfig) -> Result<(bool, Value), Error> {
    match check {
        Check::TheoremA => {
            let r = theorem_a_check_with(d, cfg)?;
            Ok((r.holds(), r.to_json()))
        }
        Check::BandIndependence => {
            let mut series = vec![];
            for side in [Side::Left, Side::Right] {
                let (site, all) = first_site_with_bands(d, side)?;
                for b in spread(&all, bands) {
                    let run = CochranConfig { band: Some(b), side, twist_site: Some(site), ..cfg.clone() };
                    let s = cochran_series_with(d, &run)?;
                    series.push(s);
                }
            }
            let same = series.windows(2).all(|w| w[0].series == w[1].series);
            let runs: Vec<Value> =
                series.iter().map(|s| json!({ "band": s.band.to_json(), "side": s.side, "betas": crate::json::big_values(&s.betas()) })).collect();
            Ok((same && series.len() >= 2, json!({ "runs": runs })))
        }
        Check::Symmetries => {
            let base = cochran_series_with(d, cfg)?;
            let r0 = cochran_series_with(&d.reverse_component(0)?, cfg)?;
            let r1 = cochran_series_with(&d.reverse_component(1)?, cfg)?;
            let sw = cochran_series_with(&d.swap_components(0, 1)?, cfg)?;
            let b1 = |s: &CochranSeries| s.series.coeff(1);
            let reverse_ok = base.series == r0.series && base.series == r1.series;
            let swap_ok = b1(&base) == b1(&sw);
            Ok((
                reverse_ok && swap_ok,
                json!({ "reverse_invariant": reverse_ok, "swap_beta1": swap_ok, "betas": crate::json::big_values(&base.betas()) }),
            ))
        }
        Check::Rationality => {
            let n = cfg.order;
            let extra = 24;
            let long = cochran_series_with(d, &CochranConfig { order: n + extra, ..cfg.clone() })?;
            let all = to_rationals(&long.betas());
            let rec = berlekamp_massey_bounded(&all[..n], n / 2);
            let ext = rec.extend(&all[..n], extra);
            let ok = rec.found && ext == all[n..];
            Ok((ok, json!({ "recurrence": rec.to_json(), "regenerated": extra })))
        }
    }
}

fn first_site_with_bands(d: &Diagram, side: Side) -> Result<(usize, Vec<BandSpec>), Error> {
    for site in 0..d.comp_edges(0) {
        let bands = pipeline_bands(d, side, site)?;
        if !bands.is_empty() {
            return Ok((site, bands));
        }
    }
    Err(Error::Band("no twist site admits a band".into()))
}

/// `k` entries spread evenly over `all`.
fn spread(all: &[BandSpec], k: usize) -> Vec<BandSpec> {
    if all.len() <= k {
        return all.to_vec();
    }
    let mut out: Vec<BandSpec> = (0..k).map(|i| all[i * (all.len() - 1) / (k - 1).max(1)]).collect();
    out.dedup();
    out
}

pub fn cmd_verify(check: Check, sources: &[String], bands: usize, run: &RunConfig) -> Outcome {
    let cfg = match cochran_config(run) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let items = if sources.is_empty() {
        default_corpus()
    } else {
        sources.iter().map(|s| load_source(s)).collect()
    };
    let items = match items {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let mut reports = vec![];
    let mut text = String::new();
    let mut all_pass = true;
    let mut worst_error: Option<Error> = None;
    for (name, d) in &items {
        match verify_one(check, d, bands, &cfg) {
            Ok((pass, detail)) => {
                all_pass &= pass;
                text.push_str(&format!("{} {name}\n", if pass { "pass" } else { "FAIL" }));
                reports.push(json!({ "source": name, "pass": pass, "detail": detail }));
            }
            Err(e) => {
                all_pass = false;
                text.push_str(&format!("ERROR {name}: {e}\n"));
                reports.push(json!({ "source": name, "pass": false, "error": e.to_string() }));
                worst_error.get_or_insert(e);
            }
        }
    }
    let check_name = value_name(check);
    let value = json!({ "check": check_name, "pass": all_pass, "items": reports });
    let stdout = render(run.format, value, text);
    let code = match (&worst_error, all_pass) {
        (Some(Error::Budget { .. }), _) => EXIT_BUDGET,
        (_, true) => EXIT_OK,
        _ => EXIT_CHECK_FAILED,
    };
    Outcome { code, stdout, stderr: String::new() }
}

pub fn cmd_series(op: SeriesOp, format: Format) -> Result<String, Error> {
    match op {
        SeriesOp::Expand { num, den, order } => {
            let p = ConwayPoly::parse(&num)?;
            let q = ConwayPoly::parse(&den)?;
            let s = poly_div_series(&p, &q, order)?;
            Ok(render(format, s.to_json(), format!("{s}\n")))
        }
        SeriesOp::Bm { coeffs, max_order } => {
            let seq = parse_rational_list(&coeffs)?;
            if seq.is_empty() {
                return Err(Error::Precondition("need at least one coefficient".into()));
            }
            let m = max_order.unwrap_or((seq.len() - 1) / 2);
            let r = berlekamp_massey_bounded(&seq, m);
            let text = if r.found {
                let c: Vec<String> = r.c.iter().map(|c| c.to_string()).collect();
                format!("recurrence of order {} from k0 = {}: c = [{}]\n", r.c.len(), r.k0, c.join(", "))
            } else {
                format!("no recurrence of order <= {m} fits {} coefficients (linear complexity {})\n", seq.len(), r.complexity)
            };
            Ok(render(format, r.to_json(), text))
        }
        SeriesOp::Hankel { coeffs, max_order } => {
            let seq = parse_rational_list(&coeffs)?;
            let m = max_order.unwrap_or(seq.len().div_ceil(2));
            let ranks = hankel_ranks(&seq, m);
            let txt: Vec<String> = ranks.iter().map(|r| r.to_string()).collect();
            Ok(render(format, json!(ranks), format!("{}\n", txt.join(" "))))
        }
        SeriesOp::Fixtures { name, order } => {
            let s = match name.as_str() {
                "central-binomial" => central_binomial_series(order),
                "factorial" => factorial_series(order),
                other => return Err(Error::Precondition(format!("unknown fixture {other:?}"))),
            };
            Ok(render(format, s.to_json(), format!("{s}\n")))
        }
    }
}

pub fn cmd_wqo(op: WqoOp, format: Format) -> Result<String, Error> {
    match op {
        WqoOp::Embeds { i, j } => {
            let e = embeds(&parse_index(&i)?, &parse_index(&j)?);
            Ok(render(format, json!(e), format!("{e}\n")))
        }
        WqoOp::Pair { seq } => {
            let seq: Vec<Vec<u32>> = seq.iter().map(|s| parse_index(s)).collect::<Result<_, _>>()?;
            let p = find_embedded_pair(&seq)?;
            let text = match p {
                Some((k, l)) => format!("{k} {l}\n"),
                None => "none\n".to_string(),
            };
            Ok(render(format, json!(p), text))
        }
        WqoOp::MuAudit { table } => {
            let t = MuTable::from_json(&read_text(&table)?)?;
            let a = mu_audit(&t);
            let mut text = String::new();
            for r in &a.rows {
                text.push_str(&format!("{:?} mu={} g={} mu_bar={}\n", r.index, r.mu, r.g, r.mu_bar));
            }
            text.push_str(&format!("chain {}\n", if a.chain_ok() { "ok" } else { "violated" }));
            Ok(render(format, a.to_json(), text))
        }
    }
}

pub fn cmd_family(name: &str, params: &str, format: Format) -> Result<String, Error> {
    let link = generate(name, &parse_ints(params)?)?;
    let pd = serialize_pd(&link.diagram);
    let value = json!({
        "name": link.name,
        "pd": pd,
        "crossings": link.diagram.num_crossings(),
        "expected_betas": link.expected,
        "twist_regions": link.regions.iter().map(|r| json!({ "site": r.site, "twists": r.twists })).collect::<Vec<_>>(),
    });
    Ok(render(format, value, format!("{pd}\n")))
}

fn beta_bar_lines(betas: &[BigInt]) -> Vec<String> {
    (1..=betas.len())
        .map(|n| {
            let b = beta_bar(betas, n).expect("index in range");
            format!("beta_bar_{n} = {} mod {}", b.value, b.modulus)
        })
        .collect()
}
