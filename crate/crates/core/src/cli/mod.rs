//! The `modsurf` command-line front end.
//!
//! Exit codes: 0 success, 1 domain or validation error, 2 I/O error,
//! 3 non-convergence.

pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::lengths::{
    cache_dir, conjugacy_oracle, length_spectrum, length_spectrum_cached, selberg_zeta_from,
    torus_zeta, LengthSpectrumEntry,
};
use crate::spectral::residuals::{
    boundary_from_samples, boundary_samples, cocycle_residuals, three_term_from_samples,
    three_term_samples, DEFAULT_SAMPLES,
};
use crate::spectral::{
    find_resonances, reconstruct_psi, refine_resonance, scan_critical_line, PeriodFunction,
    ScanRange, Tolerances, DEFAULT_DIP_FACTOR, REFINE_DISCRETIZATION,
};
use crate::transfer::{fredholm_det, gauss_matrix, Discretization, SpectralParameter};
use config::Layers;
use output::{fmt_real, parse_complex, Cell, Format, Header, Sink};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

const ORACLE_WORD_LENGTH: u32 = 16;

const AFTER_HELP: &str = "\
Parameters are resolved in this order: command-line flag, then the --config
file (lines `key = value`, e.g. `n_max = 100`), then environment variables
MODSURF_<KEY> (e.g. MODSURF_N_MAX=100), then built-in defaults.
The cache directory is MODSURF_CACHE_DIR, else $XDG_CACHE_HOME/modsurf,
else ~/.cache/modsurf.

Exit codes: 0 success, 1 domain/validation error, 2 I/O error,
3 non-convergence.";

#[derive(Debug, Parser)]
#[command(name = "modsurf", version, about = "Length spectrum, zeta functions and transfer-operator resonances of the modular surface", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file [default: stdout]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `key = value` parameter file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker thread cap [default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cache directory for the length spectrum
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct DiscArgs {
    /// Collocation nodes (key n) [default: 24]
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Explicit branches before the tail (key n_max) [default: 50]
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Taylor order of the tail correction (key k) [default: 4]
    #[arg(long = "k")]
    pub k: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct RefineArgs {
    /// Collocation nodes for refinement (key refine_n) [default: 32]
    #[arg(long)]
    pub refine_n: Option<usize>,
    /// Branches for refinement (key refine_n_max) [default: 100]
    #[arg(long)]
    pub refine_n_max: Option<usize>,
    /// Tail order for refinement (key refine_k) [default: 6]
    #[arg(long)]
    pub refine_k: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct TolArgs {
    /// Three-term residual tolerance (key three_term_tol) [default: 1e-6]
    #[arg(long)]
    pub three_term_tol: Option<f64>,
    /// Cocycle residual tolerance (key cocycle_tol) [default: 1e-5]
    #[arg(long)]
    pub cocycle_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive length spectrum up to a trace bound
    Lengths {
        /// Largest trace (key max_trace) [default: 100]
        #[arg(long)]
        max_trace: Option<u64>,
        /// Check multiplicities against brute-force conjugacy classes
        #[arg(long)]
        verify_oracle: bool,
        /// Neither read nor write the cache
        #[arg(long)]
        no_cache: bool,
    },
    /// Selberg zeta by its Euler product, or the torus zeta
    Zeta {
        /// Point, e.g. `2` or `1.5+3i` (key s)
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Use the flat-torus zeta `(1 - e^{-s})^2`
        #[arg(long)]
        torus: bool,
        /// Largest trace in the product (key max_trace) [default: 400]
        #[arg(long)]
        max_trace: Option<u64>,
        /// Factors `k = 0..=k_max` per length (key k_max) [default: 30]
        #[arg(long)]
        k_max: Option<u32>,
        /// Also report det(1 - M) det(1 + M) from the transfer operator
        #[arg(long)]
        operator: bool,
        #[command(flatten)]
        disc: DiscArgs,
    },
    /// Dips of |det(1 ∓ M)| along s = 1/2 + iR
    Scan {
        /// Grid `lo:hi:step` (keys r_lo, r_hi, step) [default: 9:14:0.01]
        #[arg(long = "r")]
        range: Option<String>,
        /// Dip threshold as a fraction of the median (key dip_factor) [default: 0.05]
        #[arg(long)]
        dip_factor: Option<f64>,
        #[command(flatten)]
        disc: DiscArgs,
    },
    /// Scan, refine every dip and check its period function
    Resonance {
        /// Grid `lo:hi:step` (keys r_lo, r_hi, step) [default: 9:14:0.01]
        #[arg(long = "r", conflicts_with = "at")]
        range: Option<String>,
        /// Refine a single dip at this R instead of scanning
        #[arg(long, requires = "parity")]
        at: Option<f64>,
        /// Sign of the operator eigenvalue for --at
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<i8>,
        /// Half-width of the refinement bracket for --at (key step) [default: 0.01]
        #[arg(long)]
        step: Option<f64>,
        /// Dip threshold as a fraction of the median (key dip_factor) [default: 0.05]
        #[arg(long)]
        dip_factor: Option<f64>,
        #[command(flatten)]
        disc: DiscArgs,
        #[command(flatten)]
        refine: RefineArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Period function samples and residuals at s = 1/2 + iR
    Periodfn {
        /// Spectral parameter R (key r)
        #[arg(long = "R", alias = "r-value")]
        r: Option<f64>,
        /// Operator eigenvalue sign [default: the sign with smaller |det|]
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<i8>,
        /// Number of three-term sample points (key samples) [default: 100]
        #[arg(long)]
        samples: Option<usize>,
        /// Extra ψ samples on `lo:hi:step`
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        refine: RefineArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Recompute the residuals of a periodfn file
    Verify { path: PathBuf },
}

/// Maps an error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        Error::NonConvergence(_) => EXIT_NON_CONVERGENCE,
        Error::Overflow(_)
        | Error::Domain(_)
        | Error::Pole(_)
        | Error::InvalidParameter(_)
        | Error::Schema { .. }
        | Error::Json(_) => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Errors are reported on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("modsurf: {e}");
            exit_code(&e)
        }
    }
}

/// Values shared by every subcommand after resolution.
struct Ctx {
    layers: Layers,
    format: Format,
    out: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
}

impl Ctx {
    fn sink(&self) -> Result<Sink> {
        Sink::open(self.out.as_deref())
    }

    fn disc(&self, a: &DiscArgs) -> Result<Discretization> {
        let d = Discretization::default();
        Discretization::new(
            self.layers.resolve("n", a.n, d.n)?,
            self.layers.resolve("n_max", a.n_max, d.n_max)?,
            self.layers.resolve("k", a.k, d.k)?,
        )
    }

    fn refine_disc(&self, a: &RefineArgs) -> Result<Discretization> {
        let d = REFINE_DISCRETIZATION;
        Discretization::new(
            self.layers.resolve("refine_n", a.refine_n, d.n)?,
            self.layers
                .resolve("refine_n_max", a.refine_n_max, d.n_max)?,
            self.layers.resolve("refine_k", a.refine_k, d.k)?,
        )
    }

    fn tolerances(&self, a: &TolArgs) -> Result<Tolerances> {
        let d = Tolerances::default();
        let tol = Tolerances {
            three_term: self
                .layers
                .resolve("three_term_tol", a.three_term_tol, d.three_term)?,
            cocycle: self
                .layers
                .resolve("cocycle_tol", a.cocycle_tol, d.cocycle)?,
        };
        if !(tol.three_term > 0.0 && tol.cocycle > 0.0) {
            return Err(Error::param("tolerances must be positive"));
        }
        Ok(tol)
    }

    fn range(&self, flag: Option<&str>) -> Result<ScanRange> {
        let (lo, hi, step) = match flag {
            Some(text) => parse_range(text)?,
            None => (
                self.layers.resolve("r_lo", None, 9.0)?,
                self.layers.resolve("r_hi", None, 14.0)?,
                self.layers.resolve("step", None, 0.01)?,
            ),
        };
        ScanRange::new(lo, hi, step)
    }

    fn dip_factor(&self, flag: Option<f64>) -> Result<f64> {
        let f = self
            .layers
            .resolve("dip_factor", flag, DEFAULT_DIP_FACTOR)?;
        if !(f > 0.0 && f.is_finite()) {
            return Err(Error::param(format!(
                "dip_factor must be positive, got {f}"
            )));
        }
        Ok(f)
    }
}

/// `lo:hi:step`.
pub fn parse_range(text: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::param(format!("range must be lo:hi:step, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let p = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    Ok((p(parts[0])?, p(parts[1])?, p(parts[2])?))
}

pub fn run(cli: Cli) -> Result<i32> {
    let layers = Layers::load(cli.global.config.as_deref())?;
    let format = layers.resolve("format", cli.global.format, Format::Csv)?;
    let out = layers.resolve_opt("out", cli.global.out.clone())?;
    let cache = layers
        .resolve_opt("cache_dir", cli.global.cache_dir.clone())?
        .or_else(cache_dir);
    let threads: Option<usize> = layers.resolve_opt("threads", cli.global.threads)?;
    let ctx = Ctx {
        layers,
        format,
        out,
        cache_dir: cache,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::param("threads must be >= 1"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::param(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&ctx, &cli.command))
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Lengths {
            max_trace,
            verify_oracle,
            no_cache,
        } => cmd_lengths(ctx, *max_trace, *verify_oracle, *no_cache),
        Command::Zeta {
            s,
            torus,
            max_trace,
            k_max,
            operator,
            disc,
        } => cmd_zeta(
            ctx,
            s.as_deref(),
            *torus,
            *max_trace,
            *k_max,
            *operator,
            disc,
        ),
        Command::Scan {
            range,
            dip_factor,
            disc,
        } => cmd_scan(ctx, range.as_deref(), *dip_factor, disc),
        Command::Resonance {
            range,
            at,
            parity,
            step,
            dip_factor,
            disc,
            refine,
            tol,
        } => cmd_resonance(
            ctx,
            range.as_deref(),
            *at,
            *parity,
            *step,
            *dip_factor,
            disc,
            refine,
            tol,
        ),
        Command::Periodfn {
            r,
            parity,
            samples,
            grid,
            refine,
            tol,
        } => cmd_periodfn(ctx, *r, *parity, *samples, grid.as_deref(), refine, tol),
        Command::Verify { path } => cmd_verify(ctx, path),
    }
}

fn disc_header(h: &mut Header, prefix: &str, d: Discretization) {
    h.push(&format!("{prefix}n"), Cell::Int(d.n as i64));
    h.push(&format!("{prefix}n_max"), Cell::Int(d.n_max as i64));
    h.push(&format!("{prefix}k"), Cell::Int(d.k as i64));
}

fn tol_header(h: &mut Header, tol: Tolerances) {
    h.push("three_term_tol", Cell::Real(tol.three_term));
    h.push("cocycle_tol", Cell::Real(tol.cocycle));
}

fn cmd_lengths(
    ctx: &Ctx,
    max_trace: Option<u64>,
    verify_oracle: bool,
    no_cache: bool,
) -> Result<i32> {
    let max_trace = ctx.layers.resolve("max_trace", max_trace, 100u64)?;
    if max_trace == 0 {
        return Err(Error::param("max_trace must be positive"));
    }
    let spectrum: Vec<LengthSpectrumEntry> = match (max_trace, &ctx.cache_dir) {
        (0..=2, _) => Vec::new(),
        (_, Some(dir)) if !no_cache => length_spectrum_cached(max_trace, dir)?,
        _ => length_spectrum(max_trace)?,
    };

    if verify_oracle {
        let report = conjugacy_oracle(max_trace, ORACLE_WORD_LENGTH)?;
        if !report.is_complete() {
            return Err(Error::NonConvergence(format!(
                "{} conjugacy classes unresolved at word length {ORACLE_WORD_LENGTH}; lower --max-trace",
                report.unresolved.len()
            )));
        }
        let counts: std::collections::BTreeMap<u64, usize> =
            spectrum.iter().map(|e| (e.trace, e.multiplicity)).collect();
        if counts != report.counts {
            return Err(Error::domain(format!(
                "necklace counts {counts:?} disagree with oracle counts {:?}",
                report.counts
            )));
        }
        eprintln!("oracle: multiplicities agree for all traces <= {max_trace}");
    }

    let mut h = Header::new("lengths");
    h.push("max_trace", Cell::Int(max_trace as i64));
    let rows: Vec<Vec<Cell>> = spectrum
        .iter()
        .map(|e| {
            let words: Vec<String> = e.necklaces.iter().map(|n| n.to_string()).collect();
            vec![
                Cell::Int(e.trace as i64),
                Cell::Real(e.length),
                Cell::Int(e.multiplicity as i64),
                Cell::Text(words.join(" ")),
            ]
        })
        .collect();
    ctx.sink()?.write_table(
        ctx.format,
        &h,
        &["trace", "length", "multiplicity", "necklaces"],
        &rows,
    )?;
    match spectrum.first() {
        Some(e) => eprintln!(
            "{} traces, smallest length {}",
            spectrum.len(),
            fmt_real(e.length)
        ),
        None => eprintln!("0 traces"),
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_zeta(
    ctx: &Ctx,
    s: Option<&str>,
    torus: bool,
    max_trace: Option<u64>,
    k_max: Option<u32>,
    operator: bool,
    disc: &DiscArgs,
) -> Result<i32> {
    let raw: String = ctx
        .layers
        .resolve_opt("s", s.map(str::to_string))?
        .ok_or_else(|| Error::param("--s is required"))?;
    let s = parse_complex(&raw).ok_or_else(|| Error::param(format!("cannot parse s = {raw:?}")))?;
    let mut h = Header::new("zeta");
    h.push("s", Cell::Complex(s));
    if torus {
        h.push("function", Cell::Text("torus".into()));
        let rows = vec![vec![Cell::Complex(s), Cell::Complex(torus_zeta(s))]];
        ctx.sink()?
            .write_table(ctx.format, &h, &["s", "value"], &rows)?;
        return Ok(EXIT_OK);
    }
    let max_trace = ctx.layers.resolve("max_trace", max_trace, 400u64)?;
    let k_max = ctx.layers.resolve("k_max", k_max, 30u32)?;
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Euler product needs Re s > 1, got s = {s}"
        )));
    }
    let spectrum = match &ctx.cache_dir {
        Some(dir) if max_trace >= 3 => length_spectrum_cached(max_trace, dir)?,
        _ => length_spectrum(max_trace)?,
    };
    let z = selberg_zeta_from(&spectrum, s, k_max)?;
    h.push("function", Cell::Text("selberg".into()));
    h.push("max_trace", Cell::Int(max_trace as i64));
    h.push("k_max", Cell::Int(k_max as i64));
    let mut cols = vec!["s", "value", "max_trace", "k_max", "traces"];
    let mut row = vec![
        Cell::Complex(s),
        Cell::Complex(z),
        Cell::Int(max_trace as i64),
        Cell::Int(k_max as i64),
        Cell::Int(spectrum.len() as i64),
    ];
    if operator {
        let d = ctx.disc(disc)?;
        disc_header(&mut h, "", d);
        let m = gauss_matrix(SpectralParameter::from(s), d)?;
        let det = fredholm_det(&m, 1.0) * fredholm_det(&m, -1.0);
        cols.extend(["det_product", "difference"]);
        row.extend([Cell::Complex(det), Cell::Real((det - z).norm())]);
    }
    ctx.sink()?.write_table(ctx.format, &h, &cols, &[row])?;
    Ok(EXIT_OK)
}

fn cmd_scan(
    ctx: &Ctx,
    range: Option<&str>,
    dip_factor: Option<f64>,
    disc: &DiscArgs,
) -> Result<i32> {
    let range = ctx.range(range)?;
    let disc = ctx.disc(disc)?;
    let dip = ctx.dip_factor(dip_factor)?;
    let dips = scan_critical_line(range, disc, dip)?;
    let mut h = Header::new("scan");
    h.push("r_lo", Cell::Real(range.lo))
        .push("r_hi", Cell::Real(range.hi))
        .push("step", Cell::Real(range.step))
        .push("dip_factor", Cell::Real(dip));
    disc_header(&mut h, "", disc);
    let rows: Vec<Vec<Cell>> = dips
        .iter()
        .map(|c| {
            vec![
                Cell::Real(c.r),
                Cell::Int(c.parity as i64),
                Cell::Real(c.det_abs),
                Cell::Real(c.threshold),
            ]
        })
        .collect();
    ctx.sink()?.write_table(
        ctx.format,
        &h,
        &["R", "parity", "det_abs", "threshold"],
        &rows,
    )?;
    eprintln!("{} candidates", dips.len());
    Ok(EXIT_OK)
}

const RESONANCE_COLUMNS: [&str; 14] = [
    "R",
    "lambda",
    "parity",
    "det_abs_min",
    "three_term_residual",
    "boundary_residual",
    "cocycle_r1",
    "cocycle_r2",
    "N",
    "n_max",
    "K",
    "accepted",
    "candidate_R",
    "status",
];

#[allow(clippy::too_many_arguments)]
fn cmd_resonance(
    ctx: &Ctx,
    range: Option<&str>,
    at: Option<f64>,
    parity: Option<i8>,
    step: Option<f64>,
    dip_factor: Option<f64>,
    disc: &DiscArgs,
    refine: &RefineArgs,
    tol: &TolArgs,
) -> Result<i32> {
    let refine_disc = ctx.refine_disc(refine)?;
    let tol = ctx.tolerances(tol)?;
    let mut h = Header::new("resonance");
    // (candidate R, result or error)
    let outcomes: Vec<(f64, i8, std::result::Result<_, String>)> = match at {
        Some(r0) => {
            let parity = parity.ok_or_else(|| Error::param("--at needs --parity"))?;
            let step = ctx.layers.resolve("step", step, 0.01)?;
            if !(step > 0.0) {
                return Err(Error::param("step must be positive"));
            }
            h.push("at", Cell::Real(r0)).push("step", Cell::Real(step));
            let res = refine_resonance(r0, parity, refine_disc, step, tol);
            match res {
                Err(e @ (Error::InvalidParameter(_) | Error::Domain(_))) => return Err(e),
                other => vec![(r0, parity, other.map_err(|e| e.to_string()))],
            }
        }
        None => {
            let range = ctx.range(range)?;
            let scan_disc = ctx.disc(disc)?;
            let dip = ctx.dip_factor(dip_factor)?;
            h.push("r_lo", Cell::Real(range.lo))
                .push("r_hi", Cell::Real(range.hi))
                .push("step", Cell::Real(range.step))
                .push("dip_factor", Cell::Real(dip));
            disc_header(&mut h, "scan_", scan_disc);
            find_resonances(range, scan_disc, refine_disc, dip, tol)?
                .into_iter()
                .map(|d| (d.candidate.r, d.candidate.parity, d.result))
                .collect()
        }
    };
    disc_header(&mut h, "refine_", refine_disc);
    tol_header(&mut h, tol);

    let mut failures = 0;
    let mut accepted = 0;
    let rows: Vec<Vec<Cell>> = outcomes
        .iter()
        .map(|(r0, parity, res)| match res {
            Ok(r) => {
                accepted += usize::from(r.accepted);
                vec![
                    Cell::Real(r.r),
                    Cell::Real(r.lambda),
                    Cell::Int(r.parity as i64),
                    Cell::Real(r.det_abs_min),
                    Cell::Real(r.three_term_residual),
                    Cell::Real(r.boundary_residual),
                    Cell::Real(r.cocycle_r1),
                    Cell::Real(r.cocycle_r2),
                    Cell::Int(r.n as i64),
                    Cell::Int(r.n_max as i64),
                    Cell::Int(r.k as i64),
                    Cell::Bool(r.accepted),
                    Cell::Real(*r0),
                    Cell::Text(if r.accepted { "ok" } else { "rejected" }.into()),
                ]
            }
            Err(msg) => {
                failures += 1;
                eprintln!("candidate R = {r0} (parity {parity}): {msg}");
                let mut row = vec![Cell::Empty; RESONANCE_COLUMNS.len()];
                row[2] = Cell::Int(*parity as i64);
                row[8] = Cell::Int(refine_disc.n as i64);
                row[9] = Cell::Int(refine_disc.n_max as i64);
                row[10] = Cell::Int(refine_disc.k as i64);
                row[11] = Cell::Bool(false);
                row[12] = Cell::Real(*r0);
                row[13] = Cell::Text(msg.clone());
                row
            }
        })
        .collect();
    ctx.sink()?
        .write_table(ctx.format, &h, &RESONANCE_COLUMNS, &rows)?;
    eprintln!(
        "{} candidates, {accepted} accepted, {failures} did not converge",
        outcomes.len()
    );
    Ok(if failures > 0 {
        EXIT_NON_CONVERGENCE
    } else {
        EXIT_OK
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_periodfn(
    ctx: &Ctx,
    r: Option<f64>,
    parity: Option<i8>,
    samples: Option<usize>,
    grid: Option<&str>,
    refine: &RefineArgs,
    tol: &TolArgs,
) -> Result<i32> {
    let r: f64 = ctx
        .layers
        .resolve_opt("r", r)?
        .ok_or_else(|| Error::param("--R is required"))?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param(format!("R must be positive, got {r}")));
    }
    let samples = ctx.layers.resolve("samples", samples, DEFAULT_SAMPLES)?;
    if samples == 0 {
        return Err(Error::param("samples must be >= 1"));
    }
    let disc = ctx.refine_disc(refine)?;
    let tol = ctx.tolerances(tol)?;
    let m = gauss_matrix(SpectralParameter::critical(r), disc)?;
    let parity: i8 = match ctx.layers.resolve_opt("parity", parity)? {
        Some(p @ (1 | -1)) => p,
        Some(p) => return Err(Error::param(format!("parity must be +1 or -1, got {p}"))),
        None if fredholm_det(&m, 1.0).norm() <= fredholm_det(&m, -1.0).norm() => 1,
        None => -1,
    };
    let pf = PeriodFunction::from_operator(m, f64::from(parity))?;
    let psi = reconstruct_psi(&pf);

    let tt = three_term_samples(&psi, samples)?;
    let scale = tt
        .iter()
        .flat_map(|(_, v)| v.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let three_term = three_term_from_samples(psi.s(), &tt, scale);
    let bd = boundary_samples(&psi)?;
    let boundary = boundary_from_samples(&bd, scale);
    let (r1, r2) = cocycle_residuals(&psi)?;

    let mut h = Header::new("periodfn");
    h.push("R", Cell::Real(r))
        .push("s", Cell::Complex(psi.s()))
        .push("parity", Cell::Int(parity as i64))
        .push("mu", Cell::Complex(pf.mu()));
    disc_header(&mut h, "", disc);
    h.push("samples", Cell::Int(samples as i64))
        .push("scale", Cell::Real(scale))
        .push("three_term_residual", Cell::Real(three_term))
        .push("boundary_residual", Cell::Real(boundary))
        .push("cocycle_r1", Cell::Real(r1))
        .push("cocycle_r2", Cell::Real(r2));
    tol_header(&mut h, tol);

    let mut rows: Vec<Vec<Cell>> = tt
        .iter()
        .map(|(t, [a, b, c])| {
            vec![
                Cell::Text(verify::KIND_THREE_TERM.into()),
                Cell::Real(*t),
                Cell::Complex(*a),
                Cell::Complex(*b),
                Cell::Complex(*c),
            ]
        })
        .collect();
    rows.extend(bd.iter().map(|(e, p, m)| {
        vec![
            Cell::Text(verify::KIND_BOUNDARY.into()),
            Cell::Real(*e),
            Cell::Complex(*p),
            Cell::Complex(*m),
            Cell::Empty,
        ]
    }));
    if let Some(g_text) = grid {
        let (lo, hi, step) = parse_range(g_text)?;
        let g = ScanRange::new(lo, hi, step)?;
        for t in g.points() {
            rows.push(vec![
                Cell::Text(verify::KIND_PSI.into()),
                Cell::Real(t),
                Cell::Complex(psi.eval(t)?),
                Cell::Empty,
                Cell::Empty,
            ]);
        }
    }
    ctx.sink()?
        .write_table(ctx.format, &h, &verify::COLUMNS, &rows)?;
    let pass = three_term < tol.three_term && r1 < tol.cocycle && r2 < tol.cocycle;
    eprintln!(
        "R = {r}, parity {parity}: three-term {three_term:.3e}, cocycle ({r1:.3e}, {r2:.3e}), boundary {boundary:.3e} [{}]",
        if pass { "within tolerance" } else { "outside tolerance" }
    );
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &Ctx, path: &Path) -> Result<i32> {
    let report = verify::verify_file(path)?;
    let mut h = Header::new("verify");
    h.push("file", Cell::Text(path.display().to_string()))
        .push("s", Cell::Complex(report.s))
        .push("three_term_tol", Cell::Real(report.three_term_tol));
    let mut rows = vec![vec![
        Cell::Text("three_term_residual".into()),
        Cell::Real(report.three_term),
        Cell::Real(report.three_term_tol),
        Cell::Bool(report.passed()),
    ]];
    if let Some(b) = report.boundary {
        rows.push(vec![
            Cell::Text("boundary_residual".into()),
            Cell::Real(b),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    ctx.sink()?.write_table(
        ctx.format,
        &h,
        &["check", "value", "tolerance", "pass"],
        &rows,
    )?;
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "three-term residual {:.3e} exceeds {:.1e}",
            report.three_term, report.three_term_tol
        );
        Ok(EXIT_DOMAIN)
    }
}
