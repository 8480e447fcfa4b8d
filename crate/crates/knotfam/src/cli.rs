//! Command-line front end. [`run`] returns the process exit code:
//! 0 success, 2 parse error, 3 catalog or build error, 4 verify mismatch,
//! 5 root finder did not converge, 1 I/O failure.

use crate::conway::{self, ParamBinding};
use crate::families::{Catalog, FamilyError, GraphSource};
use crate::graphcore::MultiGraph;
use crate::jones::normalized_jones;
use crate::poly::LaurentPoly2;
use crate::tait::{self, Checkerboard, TaitError};
use crate::tutte::TutteEngine;
use crate::zeros::{self, SvgOptions, ZeroError};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "knotfam", version, about = "Tutte and Jones polynomials of link families")]
pub struct Cli {
    /// Family catalog to use instead of the bundled one.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the Tait graph of a concrete symbol.
    Graph {
        #[arg(long)]
        conway: String,
        /// Values for the symbol's parameters, e.g. `p=2,q=3`.
        #[arg(long)]
        params: Option<String>,
        /// Use the dual checkerboard coloring.
        #[arg(long)]
        dual: bool,
    },
    /// Tutte polynomial of a family member, a symbol or a graph file.
    Tutte {
        #[command(flatten)]
        src: Source,
        /// Also build the Tait graph and compare with the engine.
        #[arg(long)]
        verify: bool,
    },
    /// Normalized Jones polynomial.
    Jones {
        #[command(flatten)]
        src: Source,
    },
    /// Zeros of the Jones polynomial, one `re im residual` line each.
    Zeros {
        #[command(flatten)]
        src: Source,
    },
    /// Sum of the absolute values of the Jones zeros.
    Zerosum {
        #[command(flatten)]
        src: Source,
    },
    /// Zeros over a parameter sweep, as CSV and optionally SVG.
    Portrait {
        #[arg(long)]
        family: String,
        /// `name=lo..hi`, once per parameter.
        #[arg(long = "range", required = true)]
        ranges: Vec<String>,
        #[arg(long, default_value_t = 1)]
        step: i64,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Half-width of the SVG frame.
        #[arg(long, default_value_t = 3.0)]
        extent: f64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List catalog entries.
    Families,
}

#[derive(Args, Debug)]
pub struct Source {
    /// Catalog entry id (its Conway symbol).
    #[arg(long, conflicts_with_all = ["graph", "conway"])]
    pub family: Option<String>,
    #[arg(long)]
    pub params: Option<String>,
    /// Graph file: `vertices N`, then one `u v` line per edge.
    #[arg(long, conflicts_with = "conway")]
    pub graph: Option<PathBuf>,
    /// Concrete Conway symbol; its Tait graph is built and evaluated.
    #[arg(long)]
    pub conway: Option<String>,
    #[arg(long)]
    pub dual: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::Conway(_) => 2,
            _ => 3,
        };
        fail(code, e)
    }
}

impl From<conway::ConwayError> for Failure {
    fn from(e: conway::ConwayError) -> Self {
        fail(2, e)
    }
}

impl From<TaitError> for Failure {
    fn from(e: TaitError) -> Self {
        fail(3, e)
    }
}

impl From<ZeroError> for Failure {
    fn from(e: ZeroError) -> Self {
        match e {
            ZeroError::ZeroPolynomial => fail(3, e),
            ZeroError::NoConvergence { .. } => fail(5, e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        match e.kind() {
            std::io::ErrorKind::BrokenPipe => fail(0, ""),
            _ => fail(1, e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => 2,
            };
        }
    };
    let result = load_catalog(&cli.catalog).and_then(|cat| execute(&cat, cli.command, out, err));
    match result {
        Ok(()) => 0,
        Err(f) if f.code == 0 => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

enum CatalogRef {
    Bundled,
    Owned(Catalog),
}

impl std::ops::Deref for CatalogRef {
    type Target = Catalog;
    fn deref(&self) -> &Catalog {
        match self {
            CatalogRef::Bundled => Catalog::bundled(),
            CatalogRef::Owned(c) => c,
        }
    }
}

fn load_catalog(path: &Option<PathBuf>) -> Result<CatalogRef, Failure> {
    let Some(path) = path else { return Ok(CatalogRef::Bundled) };
    let text = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    Ok(CatalogRef::Owned(Catalog::from_toml(&text).map_err(|e| fail(3, format!("{}: {e}", path.display())))?))
}

fn binding(s: &Option<String>) -> Result<ParamBinding, Failure> {
    s.as_deref().map(conway::parse_binding).transpose().map_err(|e| fail(2, e)).map(Option::unwrap_or_default)
}

/// Symbols that instantiate a catalog family use the coloring its formula describes;
/// anything else uses the primary coloring. `dual` flips the choice.
fn symbol_graph(cat: &Catalog, symbol: &str, params: &ParamBinding, dual: bool) -> Result<MultiGraph, Failure> {
    let ast = conway::parse(symbol)?.bind(params)?;
    let base = match cat.match_symbol(&ast) {
        Some((e, _)) if e.graph == GraphSource::Built(Checkerboard::Dual) => Checkerboard::Dual,
        _ => Checkerboard::Primary,
    };
    let c = if dual { base.flip() } else { base };
    Ok(tait::tait_graph(&ast, c)?)
}

fn read_graph(path: &PathBuf) -> Result<MultiGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    text.parse().map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn tutte_of(cat: &Catalog, src: &Source) -> Result<LaurentPoly2, Failure> {
    let params = binding(&src.params)?;
    if let Some(id) = &src.family {
        return Ok(cat.eval(id, &params)?);
    }
    let g = match (&src.graph, &src.conway) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(sym)) => symbol_graph(cat, sym, &params, src.dual)?,
        (None, None) => return Err(fail(2, "one of --family, --graph or --conway is required")),
    };
    Ok(TutteEngine::new().tutte(&g))
}

fn execute(cat: &Catalog, cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Graph { conway, params, dual } => {
            let g = symbol_graph(cat, &conway, &binding(&params)?, dual)?;
            write!(out, "{g}")?;
        }
        Command::Tutte { src, verify } => {
            let t = tutte_of(cat, &src)?;
            writeln!(out, "{t}")?;
            if verify {
                let Some(id) = &src.family else {
                    return Err(fail(2, "--verify needs --family"));
                };
                let g = cat.graph(id, &binding(&src.params)?)?;
                let engine = TutteEngine::new().tutte(&g);
                if engine != t {
                    writeln!(err, "engine:  {engine}")?;
                    return Err(fail(4, format!("formula for {id:?} disagrees with the engine")));
                }
            }
        }
        Command::Jones { src } => {
            let n = normalized_jones(&tutte_of(cat, &src)?).map_err(|e| fail(3, e))?;
            writeln!(out, "{}", n.poly)?;
            writeln!(out, "shift {} sign {}", n.shift, if n.sign < 0 { "-1" } else { "+1" })?;
        }
        Command::Zeros { src } => {
            let n = normalized_jones(&tutte_of(cat, &src)?).map_err(|e| fail(3, e))?;
            let z = zeros::roots(&n.poly)?;
            for (r, res) in z.roots.iter().zip(&z.residuals) {
                writeln!(out, "{} {} {:e}", r.re, r.im, res)?;
            }
        }
        Command::Zerosum { src } => {
            let n = normalized_jones(&tutte_of(cat, &src)?).map_err(|e| fail(3, e))?;
            let z = zeros::roots(&n.poly)?;
            writeln!(out, "{}", short_float(zeros::zero_sum(&z)))?;
        }
        Command::Portrait { family, ranges, step, out: csv_path, svg, extent, threads } => {
            let ranges = ranges.iter().map(|r| parse_range(r)).collect::<Result<Vec<_>, _>>()?;
            let p = zeros::portrait(cat, &family, &ranges, step, threads).map_err(|e| match e {
                zeros::PortraitError::Family(f) => Failure::from(f),
                other => fail(2, other),
            })?;
            for (t, why) in &p.skipped {
                writeln!(err, "skipped {t:?}: {why}")?;
            }
            match csv_path {
                Some(path) => zeros::write_csv(&p, std::fs::File::create(path)?)?,
                None => zeros::write_csv(&p, &mut *out)?,
            }
            if let Some(path) = svg {
                std::fs::write(path, zeros::render_svg(&p, SvgOptions { extent, ..SvgOptions::default() }))?;
            }
            if p.skipped.iter().any(|(_, why)| why.starts_with("no convergence")) {
                return Err(fail(5, format!("{} members failed to converge", p.skipped.len())));
            }
        }
        Command::Families => {
            for e in cat.entries() {
                writeln!(out, "{}\t{}\t{}", e.index, e.id, e.params.join(","))?;
            }
        }
    }
    Ok(())
}

/// `name=lo..hi` (inclusive).
fn parse_range(s: &str) -> Result<(String, RangeInclusive<i64>), Failure> {
    let bad = || fail(2, format!("expected name=lo..hi, got {s:?}"));
    let (name, span) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = span.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((name.trim().to_string(), lo..=hi))
}

/// Rounds to 12 decimals and drops trailing zeros, keeping one digit after the point.
fn short_float(v: f64) -> String {
    let s = format!("{v:.12}");
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}
