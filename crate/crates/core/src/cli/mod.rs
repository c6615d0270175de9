//! The `farey-odd` command line: one subcommand per verification workflow.
//!
//! Exit codes: 0 on success, 1 when a checking command finds a violation or
//! an operation fails, 2 on argument errors, 3 when a resource cap is hit.
//! `FAREY_ENUM_CAP` overrides both the lattice cap (default 5000) and the
//! Farey streaming cap (default 10⁵).

pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};

use crate::error::Error;
use crate::farey::{FareySlice, Parity};
use crate::fraction::Fraction;
use crate::gaps::{self, BridgeViolation, Bucket, DEFAULT_K_MAX};
use crate::lattice::{self, LatticeRegion, Rational, DEFAULT_LATTICE_CAP};
use crate::modular::{self, ResidueBox, ResidueRun};
use crate::sieve::{self, SieveTables, TotientSum};

pub use report::{Cell, Format, Report};

pub const DEFAULT_STREAM_CAP: u64 = 100_000;
pub const CAP_ENV: &str = "FAREY_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// List the fractions of a slice.
    Enumerate,
    /// Gap frequency table over odd denominators.
    Gaps,
    /// Totient sums and the odd Möbius series against their main terms.
    Sums,
    /// Parity-restricted lattice counts for sectors and T_{k,Q}.
    Lemma1,
    /// Random residue boxes: xy = a (mod q) counts against φ(q)|I||J|/q².
    Kloosterman,
    /// Error terms of the gap counts across several orders.
    Scan,
    /// Check the skipped-fraction identities on every triple of F_Q.
    Bridge,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Gaps => "gaps",
            Command::Sums => "sums",
            Command::Lemma1 => "lemma1",
            Command::Kloosterman => "kloosterman",
            Command::Scan => "scan",
            Command::Bridge => "bridge",
        }
    }
}

fn parse_fraction(s: &str) -> Result<Fraction, String> {
    s.parse::<Fraction>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "farey-odd",
    version,
    about = "Gap statistics of odd-denominator Farey fractions"
)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Order Q of the Farey sequence (largest modulus for `kloosterman`).
    #[arg(long = "Q", default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,

    /// Left endpoint, as "p/q" or an exact decimal.
    #[arg(long, default_value = "0/1", value_parser = parse_fraction)]
    alpha: Fraction,

    /// Right endpoint, as "p/q" or an exact decimal.
    #[arg(long, default_value = "1/1", value_parser = parse_fraction)]
    beta: Fraction,

    /// Restrict `enumerate` to odd denominators.
    #[arg(long)]
    odd: bool,

    /// Gap index for `scan`.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,

    /// Number of explicit rows in `gaps`, and of T_{k,Q} regions in `lemma1`.
    #[arg(long = "kmax", default_value_t = DEFAULT_K_MAX, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for `kloosterman`.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Random boxes per modulus for `kloosterman`.
    #[arg(long, default_value_t = 1)]
    samples: u64,

    /// Smallest modulus for `kloosterman`.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    qmin: u64,

    /// Comma-separated orders for `scan` (default Q/8, Q/4, Q/2, Q).
    #[arg(long = "qs", value_delimiter = ',')]
    orders: Vec<u64>,

    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Fully validated parameters of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub order: u64,
    pub alpha: Fraction,
    pub beta: Fraction,
    pub parity: Parity,
    pub k: u64,
    pub k_max: u64,
    pub format: Format,
    pub seed: u64,
    pub samples: u64,
    pub qmin: u64,
    pub orders: Vec<u64>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn interval(&self) -> (Fraction, Fraction) {
        (self.alpha, self.beta)
    }

    fn scan_orders(&self) -> Vec<u64> {
        if !self.orders.is_empty() {
            return self.orders.clone();
        }
        let mut v: Vec<u64> = [8, 4, 2, 1]
            .iter()
            .map(|d| self.order / d)
            .filter(|&q| q >= 2)
            .collect();
        v.dedup();
        v
    }
}

/// Parses `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    if args.alpha > args.beta {
        return Err(Args::command().error(
            ErrorKind::ValueValidation,
            format!(
                "--alpha {} must not exceed --beta {}",
                args.alpha, args.beta
            ),
        ));
    }
    if let Some(&bad) = args.orders.iter().find(|&&q| q < 2) {
        return Err(Args::command().error(
            ErrorKind::ValueValidation,
            format!("--qs entries must be at least 2, got {bad}"),
        ));
    }
    if args.command == Command::Kloosterman && args.qmin > args.order {
        return Err(Args::command().error(
            ErrorKind::ValueValidation,
            format!("--qmin {} exceeds --Q {}", args.qmin, args.order),
        ));
    }
    Ok(RunConfig {
        command: args.command,
        order: args.order,
        alpha: args.alpha,
        beta: args.beta,
        parity: if args.odd {
            Parity::OddDen
        } else {
            Parity::All
        },
        k: args.k,
        k_max: args.k_max,
        format: args.format,
        seed: args.seed,
        samples: args.samples,
        qmin: args.qmin,
        orders: args.orders,
        output: args.output,
    })
}

/// Enumeration limits for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub lattice: u64,
    pub stream: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lattice: DEFAULT_LATTICE_CAP,
            stream: DEFAULT_STREAM_CAP,
        }
    }
}

impl Caps {
    /// Defaults, with both caps replaced by `FAREY_ENUM_CAP` when it is set.
    pub fn from_env() -> Self {
        match std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            Some(cap) => Caps {
                lattice: cap,
                stream: cap,
            },
            None => Caps::default(),
        }
    }
}

/// What a run produced before rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    /// Invariant failures found by checking commands.
    pub violations: u64,
    /// One-line human summary for standard error.
    pub summary: Option<String>,
}

/// Runs a command and writes its report to the configured destination.
pub fn run(config: &RunConfig) -> i32 {
    let caps = Caps::from_env();
    let outcome = match execute(config, caps) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match &config.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.report.write(config.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            outcome.report.write(config.format, &mut lock)
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_VIOLATION;
    }
    if let Some(summary) = &outcome.summary {
        eprintln!("{summary}");
    }
    if outcome.violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            }
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::InvalidArgument(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_VIOLATION,
    }
}

fn check_cap(what: &'static str, requested: u64, cap: u64) -> Result<(), Error> {
    if requested > cap {
        Err(Error::CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

fn interval_cell(config: &RunConfig) -> Cell {
    Cell::List(vec![
        config.alpha.to_string().into(),
        config.beta.to_string().into(),
    ])
}

fn rational_cell(r: Rational) -> Cell {
    Cell::Text(format!("{}/{}", r.numer(), r.denom()))
}

/// Computes a command's report without writing it anywhere.
pub fn execute(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    match config.command {
        Command::Enumerate => enumerate(config, caps),
        Command::Gaps => gaps_table(config, caps),
        Command::Sums => sums(config),
        Command::Lemma1 => lemma1(config, caps),
        Command::Kloosterman => kloosterman(config, caps),
        Command::Scan => scan(config, caps),
        Command::Bridge => bridge(config, caps),
    }
}

fn plain(report: Report) -> Outcome {
    Outcome {
        report,
        violations: 0,
        summary: None,
    }
}

fn enumerate(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    check_cap("Farey order", config.order, caps.stream)?;
    let slice = FareySlice::new(config.order, config.alpha, config.beta, config.parity)?;
    let mut report =
        Report::new(Command::Enumerate.name()).columns(&["index", "fraction", "num", "den"]);
    for (i, f) in slice.iter().enumerate() {
        report.row(vec![
            (i as u64).into(),
            f.to_string().into(),
            f.num().into(),
            f.den().into(),
        ]);
    }
    let count = report.rows.len() as u64;
    let parity = match config.parity {
        Parity::All => "all",
        Parity::OddDen => "odd",
    };
    report.fields = vec![
        ("Q", config.order.into()),
        ("interval", interval_cell(config)),
        ("parity", parity.into()),
        ("count", count.into()),
    ];
    Ok(plain(report))
}

fn gaps_table(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    check_cap("Farey order", config.order, caps.stream)?;
    let slice = FareySlice::new(config.order, config.alpha, config.beta, Parity::OddDen)?;
    let table = gaps::frequency_table(&slice, config.k_max)?;
    let h = &table.histogram;
    let mut report = Report::new(Command::Gaps.name())
        .field("Q", config.order)
        .field("interval", interval_cell(config))
        .field("population", h.population)
        .field("pairs", h.pairs())
        .field("kmax", config.k_max)
        .field("normalization", "pairs")
        .columns(&[
            "k",
            "count",
            "empirical",
            "theoretical",
            "main_term",
            "abs_error",
            "normalized_error",
        ]);
    for row in table.rows.iter().chain(std::iter::once(&table.overflow)) {
        let k: Cell = match row.bucket {
            Bucket::Exact(k) => k.into(),
            Bucket::Above(k) => format!(">{k}").into(),
        };
        report.row(vec![
            k,
            row.count.into(),
            row.empirical.into(),
            rational_cell(row.theoretical),
            row.main_term.into(),
            row.abs_error.into(),
            row.normalized_error.into(),
        ]);
    }
    Ok(plain(report))
}

fn sums(config: &RunConfig) -> Result<Outcome, Error> {
    let q = config.order;
    let table = SieveTables::new(q)?;
    let mut report = Report::new(Command::Sums.name())
        .field("Q", q)
        .field("exact_ratio_limit", sieve::EXACT_RATIO_LIMIT)
        .columns(&["name", "exact", "is_exact", "value", "main_term", "ratio"]);
    for kind in TotientSum::ALL {
        let value = table.totient_sum(kind, q)?;
        let exact: Cell = match value.exact() {
            Some(r) if r.is_integer() => r.numer().to_string().into(),
            Some(r) => format!("{}/{}", r.numer(), r.denom()).into(),
            None => Cell::Null,
        };
        let v = value.to_f64();
        let main = kind.main_term(q);
        report.row(vec![
            kind.name().into(),
            exact,
            value.is_exact().into(),
            v.into(),
            main.into(),
            (v / main).into(),
        ]);
    }
    let series = table.odd_mobius_series(q)?;
    let limit = 8.0 / (std::f64::consts::PI * std::f64::consts::PI);
    report.row(vec![
        "odd_mobius".into(),
        Cell::Null,
        false.into(),
        series.into(),
        limit.into(),
        (series / limit).into(),
    ]);
    Ok(plain(report))
}

fn lemma1(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    let q = config.order;
    check_cap("lattice bounding box side", q, caps.lattice)?;
    check_cap("Farey order", q, caps.stream)?;
    let sector = LatticeRegion::sector(q, config.alpha, config.beta)?;
    let mut regions: Vec<(String, LatticeRegion)> = vec![
        ("sector".into(), sector.clone()),
        ("sector*".into(), lattice::halve_y(sector)),
    ];
    for k in 1..=config.k_max {
        regions.push((format!("T{k}"), LatticeRegion::tk(k, q)?));
    }

    let mut report = Report::new(Command::Lemma1.name()).columns(&[
        "region",
        "area",
        "points",
        "m_odd",
        "n_all",
        "n_odd",
        "n_odd_odd",
        "n_odd_even",
        "halved_n_odd",
        "main_n_odd",
        "main_n_odd_odd",
        "main_n_odd_even",
        "n_odd_error_per_q_log_q",
    ]);
    let mut violations = 0u64;
    let mut reports = Vec::new();
    let q_log_q = q as f64 * (q as f64).ln();
    for (name, region) in &regions {
        let c = lattice::count_lattice_capped(region, caps.lattice)?;
        let halved =
            lattice::count_lattice_capped(&lattice::halve_y(region.clone()), caps.lattice)?;
        if halved.n_odd != c.n_odd_even || c.n_odd != c.n_odd_odd + c.n_odd_even {
            violations += 1;
        }
        report.row(vec![
            name.clone().into(),
            rational_cell(c.area),
            c.points.into(),
            c.m_odd.into(),
            c.n_all.into(),
            c.n_odd.into(),
            c.n_odd_odd.into(),
            c.n_odd_even.into(),
            halved.n_odd.into(),
            c.main_n_odd.into(),
            c.main_n_odd_odd.into(),
            c.main_n_odd_even.into(),
            ((c.n_odd as f64 - c.main_n_odd).abs() / q_log_q).into(),
        ]);
        reports.push(c);
    }

    let card = gaps::slice_cardinality(q, config.interval())?;
    if card.exact != reports[0].n_odd {
        violations += 1;
    }
    // On the full interval, gaps k >= 2 are exactly the primitive odd-even
    // points of T_{k,Q}.
    let mut gap_region_matches: Cell = Cell::Null;
    if config.alpha.is_zero() && config.beta.is_one() {
        let h = gaps::gap_histogram(&FareySlice::full(q, Parity::OddDen)?)?;
        let ok = (2..=config.k_max).all(|k| h.count(k) == reports[k as usize + 1].n_odd_even);
        if !ok {
            violations += 1;
        }
        gap_region_matches = ok.into();
    }
    report.fields = vec![
        ("Q", q.into()),
        ("interval", interval_cell(config)),
        ("kmax", config.k_max.into()),
        ("farey_count", card.exact.into()),
        (
            "sector_matches_farey",
            (card.exact == reports[0].n_odd).into(),
        ),
        ("gaps_match_tk", gap_region_matches),
        ("violations", violations.into()),
    ];
    Ok(Outcome {
        report,
        violations,
        summary: Some(format!("{violations} violations")),
    })
}

fn kloosterman(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    check_cap("largest modulus", config.order, caps.stream)?;
    let moduli: Vec<u64> = (config.qmin..=config.order).collect();
    let scan = modular::deviation_scan(&moduli, config.samples, config.seed)?;

    // Full boxes must match the main term exactly for every prime modulus.
    let mut full_box_failures = 0u64;
    for &q in moduli.iter().filter(|&&q| modular::totient(q) == q - 1) {
        let bx = ResidueBox::new(q, ResidueRun::new(0, q), ResidueRun::new(0, q), 1)?;
        if modular::count_products(&bx, q - 1).deviation() != 0.0 {
            full_box_failures += 1;
        }
    }

    let mut report = Report::new(Command::Kloosterman.name())
        .field("qmin", config.qmin)
        .field("qmax", config.order)
        .field("samples", config.samples)
        .field("seed", config.seed)
        .field("max_normalized", scan.max_normalized)
        .field("median_normalized", scan.median_normalized)
        .field("scale_exponent", modular::DEVIATION_EXPONENT)
        .field("full_box_prime_failures", full_box_failures)
        .columns(&[
            "q",
            "sample",
            "i_start",
            "i_len",
            "j_start",
            "j_len",
            "a",
            "exact",
            "main_term",
            "deviation",
            "normalized",
        ]);
    for r in &scan.rows {
        report.row(vec![
            r.modulus.into(),
            r.sample.into(),
            r.i.start.into(),
            r.i.len.into(),
            r.j.start.into(),
            r.j.len.into(),
            r.target.into(),
            r.exact.into(),
            r.main_term.into(),
            r.deviation.into(),
            r.normalized.into(),
        ]);
    }
    Ok(Outcome {
        report,
        violations: full_box_failures,
        summary: Some(format!(
            "max deviation/q^{} = {}, median = {}",
            modular::DEVIATION_EXPONENT,
            report::format_sig(scan.max_normalized),
            report::format_sig(scan.median_normalized)
        )),
    })
}

fn scan(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    let orders = config.scan_orders();
    if let Some(&max) = orders.iter().max() {
        check_cap("Farey order", max, caps.stream)?;
    }
    let rows = gaps::error_scan(config.k, &orders, config.interval())?;
    let mut report = Report::new(Command::Scan.name())
        .field("k", config.k)
        .field("interval", interval_cell(config))
        .field("epsilon", gaps::SUBINTERVAL_EPSILON)
        .columns(&[
            "Q",
            "count",
            "main_term",
            "abs_error",
            "per_q_log_q",
            "per_q_1_55",
        ]);
    for r in rows {
        report.row(vec![
            r.order.into(),
            r.count.into(),
            r.main_term.into(),
            r.abs_error.into(),
            r.per_q_log_q.into(),
            r.per_q_three_halves.into(),
        ]);
    }
    Ok(plain(report))
}

fn bridge(config: &RunConfig, caps: Caps) -> Result<Outcome, Error> {
    check_cap("Farey order", config.order, caps.stream)?;
    let result = gaps::bridge_check(config.order)?;
    let violations = result.violations.len() as u64;
    let mut report = Report::new(Command::Bridge.name())
        .field("Q", config.order)
        .field("triples", result.triples)
        .field("odd_pairs", result.odd_pairs)
        .field("wide_gaps", result.wide_gaps)
        .field("violations", violations)
        .columns(&["kind", "left", "mid", "right", "gap", "detail"]);
    for v in &result.violations {
        let (kind, left, mid, right, gap, detail): (
            &str,
            Fraction,
            Option<Fraction>,
            Fraction,
            u64,
            Cell,
        ) = match *v {
            BridgeViolation::GapIndex { triple, gap, index } => (
                "gap_index",
                triple.left,
                Some(triple.mid),
                triple.right,
                gap,
                index.into(),
            ),
            BridgeViolation::Mediant { triple, gap } => (
                "mediant",
                triple.left,
                Some(triple.mid),
                triple.right,
                gap,
                Cell::Null,
            ),
            BridgeViolation::AdjacentGap { left, right, gap } => {
                ("adjacent_gap", left, None, right, gap, Cell::Null)
            }
            BridgeViolation::Skipped {
                left,
                right,
                skipped,
            } => {
                let gap = gaps_delta(left, right);
                ("skipped", left, None, right, gap, skipped.into())
            }
        };
        report.row(vec![
            kind.into(),
            left.to_string().into(),
            mid.map(|m| m.to_string()).into(),
            right.to_string().into(),
            gap.into(),
            detail,
        ]);
    }
    Ok(Outcome {
        report,
        violations,
        summary: Some(format!(
            "{violations} violations / {} triples",
            result.triples
        )),
    })
}

fn gaps_delta(left: Fraction, right: Fraction) -> u64 {
    crate::farey::delta(left, right).unwrap_or(0)
}
