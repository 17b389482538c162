//! `riders` subcommands: count, fit, types, mobius, bounds, verify.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use riders_core::arrangement::{build_move_arrangement, intersection_semilattice, reconstruct_count, DEFAULT_MAX_FLATS};
use riders_core::bounds::{attack_matrix, denominator, lcmd, lcmd_closed_form_two_moves, DEFAULT_MINOR_BUDGET, DEFAULT_SYSTEM_BUDGET};
use riders_core::enumerate::{census_types, Budget, CountTable};
use riders_core::quasipoly::{detect_period, fit, fit_labelled, verified_range};
use riders_core::MoveSet;

use crate::config::{default_budget, Format, RunConfig};
use crate::formats::{self, BoundsReport};
use crate::parse::{parse_board, parse_piece, parse_range, piece_text};
use crate::verify::{self, SuiteOptions};
use crate::{parallel, Error};

#[derive(Parser, Debug)]
#[command(name = "riders", version, about = "Exact counts, formulas and period bounds for nonattacking riders")]
struct Cli {
    /// Report errors as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count nonattacking placements for a range of n.
    Count(RunArgs),
    /// Count, then fit a quasipolynomial (period detected unless given).
    Fit(FitArgs),
    /// Census of configuration types, and the count at n = -1.
    Types(TypesArgs),
    /// Intersection semilattice of the move arrangement with Möbius values.
    Mobius(MobiusArgs),
    /// Denominator and subdeterminant bounds on the period.
    Bounds(BoundsArgs),
    /// Run the reproduction battery.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct PieceArgs {
    /// Preset (queen, rook, bishop, nightrider, semiqueen) or moves `c1,d1;c2,d2;...`.
    #[arg(long, default_value = "queen")]
    piece: String,
    /// Custom moves; overrides --piece.
    #[arg(long)]
    moves: Option<String>,
    /// `square`, `rect:a,b` or `poly:a,b,beta;...`.
    #[arg(long, default_value = "square")]
    board: String,
    #[arg(long)]
    q: u64,
}

impl PieceArgs {
    fn piece(&self) -> Result<MoveSet, Error> {
        match &self.moves {
            Some(m) => parse_piece(m),
            None => parse_piece(&self.piece),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[command(flatten)]
    piece: PieceArgs,
    /// `a:b` or a single n.
    #[arg(long, default_value = "1:8")]
    n: String,
    #[arg(long, default_value = "json")]
    format: String,
    /// Enumeration budget; defaults to $RIDERS_BUDGET or 10^10.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    threads: Option<usize>,
    /// Read the whole run configuration from this file (one `key=value ...` line).
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// Print the effective run configuration and exit.
    #[arg(long)]
    print_config: bool,
}

impl RunArgs {
    fn config(&self, period: Option<u64>) -> Result<RunConfig, Error> {
        if let Some(path) = &self.config {
            return std::fs::read_to_string(path)?.parse();
        }
        let mut cfg = RunConfig::new(self.piece.piece()?, self.piece.q, parse_range(&self.n)?);
        cfg.board = parse_board(&self.piece.board)?;
        cfg.format = self.format.parse()?;
        cfg.budget = self.budget.map_or_else(default_budget, Budget);
        cfg.threads = self.threads;
        cfg.period = period;
        Ok(cfg)
    }
}

#[derive(Args, Debug, Clone)]
struct FitArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Fix the period instead of detecting it.
    #[arg(long)]
    period: Option<u64>,
    /// Polynomial degree; defaults to 2q.
    #[arg(long)]
    degree: Option<usize>,
    /// Largest period tried by detection.
    #[arg(long, default_value_t = 12)]
    p_max: u64,
    /// Fit the labelled column instead of the unlabelled one.
    #[arg(long)]
    labelled: bool,
    /// Fit a count table (JSON from `count`) instead of counting.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct TypesArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Sizes at which to take the census, `a:b`.
    #[arg(long, default_value = "4:8")]
    census: String,
    #[arg(long)]
    period: Option<u64>,
    #[arg(long, default_value_t = 12)]
    p_max: u64,
}

#[derive(Args, Debug, Clone)]
struct MobiusArgs {
    #[command(flatten)]
    piece: PieceArgs,
    /// Also check the reconstruction against brute force on this range.
    #[arg(long)]
    check: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_FLATS)]
    max_flats: usize,
}

#[derive(Args, Debug, Clone)]
struct BoundsArgs {
    #[command(flatten)]
    piece: PieceArgs,
    /// Skip vertex enumeration.
    #[arg(long)]
    no_denominator: bool,
    /// Also detect the period from counts on this range.
    #[arg(long)]
    period_n: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SYSTEM_BUDGET)]
    system_budget: u128,
    #[arg(long, default_value_t = DEFAULT_MINOR_BUDGET)]
    minor_budget: u128,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[arg(long, default_value = "paper")]
    suite: String,
    /// Include the optional nightrider q = 4 lcmd job.
    #[arg(long)]
    stretch: bool,
    /// Show every check, not only failures.
    #[arg(long)]
    verbose: bool,
}

/// Parses `argv`, runs the command, writes output, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = Error::Usage(e.to_string().trim().to_string());
            report_error(&err, json_errors);
            return err.exit_code();
        }
    };
    let mut stdout = std::io::stdout().lock();
    match dispatch(cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e, cli.json_errors);
            e.exit_code()
        }
    }
}

fn report_error(e: &Error, json: bool) {
    if json {
        eprint!("{}", formats::to_text(&formats::error_json(e)));
    } else {
        eprintln!("riders: {e}");
    }
}

fn emit(out: &mut impl Write, v: &Value) -> Result<(), Error> {
    out.write_all(formats::to_text(v).as_bytes())?;
    Ok(())
}

fn dispatch(cmd: Command, out: &mut impl Write) -> Result<i32, Error> {
    match cmd {
        Command::Count(a) => count_cmd(&a, out),
        Command::Fit(a) => fit_cmd(&a, out),
        Command::Types(a) => types_cmd(&a, out),
        Command::Mobius(a) => mobius_cmd(&a, out),
        Command::Bounds(a) => bounds_cmd(&a, out),
        Command::Verify(a) => verify_cmd(&a, out),
    }
    .map(|code| code.unwrap_or(0))
}

/// Only `count` writes CSV; the other reports are nested.
fn reject_csv(cfg: &RunConfig, cmd: &str) -> Result<(), Error> {
    if cfg.format == Format::Csv {
        return Err(Error::Usage(format!("`{cmd}` writes json or pretty, not csv")));
    }
    Ok(())
}

fn counts(cfg: &RunConfig) -> Result<CountTable, Error> {
    let table = parallel::with_threads(cfg.threads, || {
        parallel::count_series(&cfg.piece, &cfg.board, cfg.q, cfg.n, cfg.budget)
    })??;
    Ok(table)
}

fn count_cmd(a: &RunArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    let cfg = a.config(None)?;
    if a.print_config {
        writeln!(out, "{cfg}")?;
        return Ok(None);
    }
    let table = counts(&cfg)?;
    match cfg.format {
        Format::Json => emit(out, &formats::count_table_json(&table))?,
        Format::Csv => out.write_all(formats::count_table_csv(&table)?.as_bytes())?,
        Format::Pretty => out.write_all(formats::count_table_pretty(&table).as_bytes())?,
    }
    Ok(None)
}

fn fit_cmd(a: &FitArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    let cfg = a.run.config(a.period)?;
    if a.run.print_config {
        writeln!(out, "{cfg}")?;
        return Ok(None);
    }
    reject_csv(&cfg, "fit")?;
    let table = match &a.input {
        Some(path) => formats::count_table_from_json(&serde_json::from_str(&std::fs::read_to_string(path)?)?)?,
        None => counts(&cfg)?,
    };
    let degree = a.degree.unwrap_or(2 * table.q as usize);
    let period = match cfg.period {
        Some(p) => p,
        None => detect_period(&table, degree, a.p_max, None)?,
    };
    let qp = if a.labelled { fit_labelled(&table, period, degree)? } else { fit(&table, period, degree)? };
    match cfg.format {
        Format::Pretty => {
            let range = verified_range(&table).unwrap_or((0, 0));
            writeln!(out, "u(n) = {}", qp.pretty())?;
            writeln!(out, "period {}, degree {}; {}", qp.period(), qp.degree(), formats::verified_label(range))?;
        }
        _ => emit(out, &formats::fit_report_json(&qp, &table, a.labelled))?,
    }
    Ok(None)
}

fn types_cmd(a: &TypesArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    let cfg = a.run.config(a.period)?;
    if a.run.print_config {
        writeln!(out, "{cfg}")?;
        return Ok(None);
    }
    reject_csv(&cfg, "types")?;
    let (c0, c1) = parse_range(&a.census)?;
    let mut census = Vec::new();
    let mut largest = None;
    for n in c0..=c1 {
        let c = census_types(&cfg.piece, &cfg.board, cfg.q, n, cfg.budget)?;
        census.push(formats::census_json(n, &c));
        largest = Some(c.unlabelled);
    }
    let table = counts(&cfg)?;
    let degree = 2 * cfg.q as usize;
    let period = match cfg.period {
        Some(p) => p,
        None => detect_period(&table, degree, a.p_max, None)?,
    };
    let qp = fit(&table, period, degree)?;
    let lab = fit_labelled(&table, period, degree)?;
    let unlabelled = qp.types_count()?;
    let labelled = lab.types_count()?;
    let range = verified_range(&table).unwrap_or((0, 0));
    let v = json!({
        "piece": piece_text(&cfg.piece),
        "board": cfg.board.to_text(),
        "q": cfg.q,
        "census": census,
        "types_count": {
            "unlabelled": unlabelled.to_string(),
            "labelled": labelled.to_string(),
            "period": period,
            "status": formats::verified_label(range),
        },
        "census_agrees": largest.map(|l| num_bigint::BigInt::from(l) == unlabelled),
    });
    match cfg.format {
        Format::Pretty => writeln!(out, "{} q={}: {} types ({} labelled)", piece_text(&cfg.piece), cfg.q, unlabelled, labelled)?,
        _ => emit(out, &v)?,
    }
    Ok(None)
}

fn mobius_cmd(a: &MobiusArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    let ms = a.piece.piece()?;
    let q = a.piece.q as usize;
    let sl = intersection_semilattice(&build_move_arrangement(&ms, q), &ms, q, a.max_flats)?;
    let mut v = formats::semilattice_json(&sl);
    if let Some(range) = &a.check {
        let board = parse_board(&a.piece.board)?;
        let (n0, n1) = parse_range(range)?;
        let mut rows = Vec::new();
        let mut all = true;
        for n in n0..=n1 {
            let rec = reconstruct_count(&sl, &board, n, default_budget())?;
            let bf = parallel::count(&ms, &board, q as u64, n, default_budget())?;
            let same = rec == num_bigint::BigInt::from(bf.labelled.clone());
            all &= same;
            rows.push(json!({"n": n, "reconstructed": rec.to_string(), "brute_force": bf.labelled.to_string(), "equal": same}));
        }
        v["check"] = json!({"board": board.to_text(), "rows": rows, "all_equal": all});
        if !all {
            emit(out, &v)?;
            return Err(Error::Verification("reconstruction differs from brute force".into()));
        }
    }
    emit(out, &v)?;
    Ok(None)
}

fn bounds_cmd(a: &BoundsArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    let ms = a.piece.piece()?;
    let board = parse_board(&a.piece.board)?;
    let q = a.piece.q as usize;
    let mut r = BoundsReport {
        piece: piece_text(&ms),
        q: q as u64,
        board: board.to_text(),
        exhaustive: true,
        ..Default::default()
    };
    let mut methods = Vec::new();
    if !a.no_denominator {
        r.denominator = Some(denominator(&ms, &board, q, a.system_budget)?);
        methods.push("vertex_enumeration");
    }
    if ms.len() == 2 {
        r.lcmd = Some(lcmd_closed_form_two_moves(&ms, q)?);
        methods.push("closed_form_two_moves");
        if ms.moves() == MoveSet::bishop().moves() {
            r.notes.push("bishop closed form gives 2^(q-1); a 2^q reading of the same bound is not used".into());
        }
    } else {
        r.lcmd = Some(lcmd(&attack_matrix(&ms, q), a.minor_budget)?);
        methods.push("direct_minors");
    }
    if !board.has_integral_vertices() {
        r.notes.push("board has non-integral vertices; lcmd covers the attack block only".into());
    }
    if let Some(range) = &a.period_n {
        let table = parallel::count_series(&ms, &board, q as u64, parse_range(range)?, default_budget())?;
        let p = detect_period(&table, 2 * q, 12, r.denominator.as_ref())?;
        r.period_observed = Some(p);
        let (n0, n1) = verified_range(&table).unwrap_or((0, 0));
        r.notes.push(format!("period_observed is the least period consistent with counts on n ∈ [{n0}, {n1}]"));
        if let Some(d) = &r.denominator {
            if d % BigUint::from(p) != BigUint::from(0u32) {
                emit(out, &formats::bounds_json(&r))?;
                return Err(Error::Verification(format!("period {p} does not divide denominator {d}")));
            }
        }
    }
    r.method = methods.join("+");
    emit(out, &formats::bounds_json(&r))?;
    Ok(None)
}

fn verify_cmd(a: &VerifyArgs, out: &mut impl Write) -> Result<Option<i32>, Error> {
    if a.suite != "paper" {
        return Err(Error::Usage(format!("unknown suite {:?}; the only suite is `paper`", a.suite)));
    }
    let mut io_err = None;
    let outcomes = verify::run_suite(SuiteOptions { stretch: a.stretch }, |o| {
        if let Err(e) = writeln!(out, "{}", o.report(a.verbose)).and_then(|_| out.flush()) {
            io_err.get_or_insert(e);
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| o.status == verify::Status::Fail).map(|o| o.id.to_string()).collect();
    if failed.is_empty() {
        Ok(None)
    } else {
        Err(Error::Verification(format!("criteria {} failed", failed.join(", "))))
    }
}

