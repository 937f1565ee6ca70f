//! Argument parsing and the subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridlab_core::complex::{ComplexError, CrossingPackage, Flavor};
use gridlab_core::grid::{GridDiagram, GridError};
use gridlab_core::lbound::{lbound, LBoundError};
use gridlab_core::states::{StateError, DEFAULT_MAX_N};
use gridlab_core::text::{parse_grid, serialize_grid};
use serde::Serialize;

use crate::cache::{key, Cache};
use crate::catalog;
use crate::cert::{parse_certificate, CertError};
use crate::report::{self, HomologyReport, TorsionSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gridlab", version, about = "Grid homology, crossing-change maps and unknotting bounds")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest grid number accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N, value_name = "K")]
    pub max_n: usize,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,
}

/// A grid file, or `catalog:<name>` for a bundled grid.
type GridArg = String;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a grid and count its components.
    Validate { grid: GridArg },
    /// Maslov and Alexander gradings of every state.
    Gradings { grid: GridArg },
    /// Number of states in each bigrading.
    States { grid: GridArg },
    #[command(subcommand)]
    Check(CheckCommand),
    #[command(subcommand)]
    Crossing(CrossingCommand),
    /// Unblocked homology as F[U]-module bars.
    Homology { grid: GridArg },
    /// Maximal order of U-torsion in the unblocked homology.
    Torsion { grid: GridArg },
    /// Dimension of the fully specialized homology.
    Tilde { grid: GridArg },
    /// Bounds from a certificate of crossing changes.
    Lbound { certificate: PathBuf },
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Verify that the differentials square to zero.
    D2 {
        grid: GridArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::All)]
        flavor: FlavorArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FlavorArg {
    All,
    Unblocked,
    Filtered,
    Tilde,
}

impl FlavorArg {
    fn flavors(self) -> Vec<Flavor> {
        match self {
            Self::All => vec![Flavor::Unblocked, Flavor::Filtered, Flavor::Tilde],
            Self::Unblocked => vec![Flavor::Unblocked],
            Self::Filtered => vec![Flavor::Filtered],
            Self::Tilde => vec![Flavor::Tilde],
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum CrossingCommand {
    /// Build the crossing-change maps of a cross-commutation pair and verify them.
    Check {
        first: GridArg,
        second: GridArg,
        /// Also write the four maps as JSON into this directory.
        #[arg(long, value_name = "DIR")]
        maps: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Show { name: String },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input; exit 2.
    Usage(String),
    /// A verification ran and failed; exit 1.
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Verify(_) => EXIT_FAILED,
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotADifferential { .. } | ComplexError::Verification(_) => Self::Verify(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<LBoundError> for Failure {
    fn from(e: LBoundError) -> Self {
        match e {
            LBoundError::Complex(c) => c.into(),
            LBoundError::Grid(GridError::NotAKnot { .. }) | LBoundError::Map(_) => Self::Usage(e.to_string()),
            _ => Self::Verify(e.to_string()),
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Invalid(inner) => inner.into(),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        Self::Usage(e.to_string())
    }
}

/// What a command printed and whether it counts as success.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn load_grid(arg: &str) -> Result<GridDiagram, Failure> {
    let text = match arg.strip_prefix("catalog:") {
        Some(name) => {
            catalog::text(name).ok_or_else(|| Failure::Usage(format!("no catalog grid named `{name}`")))?.to_string()
        }
        None => std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?,
    };
    parse_grid(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn check_cap(g: &GridDiagram, cap: usize) -> Result<(), Failure> {
    if g.n() > cap {
        return Err(StateError::CapExceeded { n: g.n(), cap }.into());
    }
    Ok(())
}

struct Ctx<'a> {
    opts: Opts,
    cache: Cache,
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn render<T: Serialize>(&self, value: &T, text: impl FnOnce(&T) -> String) -> String {
        if self.opts.json {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        } else {
            text(value)
        }
    }

    fn progress(&mut self, msg: &str) {
        let _ = writeln!(self.err, "gridlab: {msg}");
    }

    fn homology(&mut self, g: &GridDiagram) -> Result<HomologyReport, Failure> {
        check_cap(g, self.opts.max_n)?;
        self.progress(&format!("unblocked homology, n={}", g.n()));
        let k = key("homology", &[], &[g]);
        let cap = self.opts.max_n;
        Ok(self.cache.get_or(&k, self.err, || report::homology_report(g, cap))?)
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<Output, Failure> {
    let cap = ctx.opts.max_n;
    match cmd {
        Command::Validate { grid } => {
            let g = load_grid(&grid)?;
            let r = report::validate(&g);
            Ok(Output::ok(ctx.render(&r, report::ValidateReport::text)))
        }
        Command::Gradings { grid } => {
            let g = load_grid(&grid)?;
            let r = report::gradings_report(&g, cap)?;
            Ok(Output::ok(ctx.render(&r, report::GradingsReport::text)))
        }
        Command::States { grid } => {
            let g = load_grid(&grid)?;
            let r = report::states_report(&g, cap)?;
            Ok(Output::ok(ctx.render(&r, report::StatesReport::text)))
        }
        Command::Check(CheckCommand::D2 { grid, flavor }) => {
            let g = load_grid(&grid)?;
            check_cap(&g, cap)?;
            let flavors = flavor.flavors();
            let names = flavors.iter().map(|f| f.name()).collect::<Vec<_>>().join(",");
            ctx.progress(&format!("checking d^2 ({names}), n={}", g.n()));
            let k = key("check-d2", &[("flavors", names)], &[&g]);
            let r = ctx.cache.get_or(&k, ctx.err, || report::d2_report(&g, &flavors, cap))?;
            Ok(Output { text: ctx.render(&r, report::D2Report::text), ok: r.passed() })
        }
        Command::Crossing(CrossingCommand::Check { first, second, maps }) => {
            let (a, b) = (load_grid(&first)?, load_grid(&second)?);
            check_cap(&a, cap)?;
            ctx.progress(&format!("crossing maps, n={}", a.n()));
            let build = || -> Result<(report::CrossingReport, Option<CrossingPackage>), Failure> {
                let pkg = CrossingPackage::build_unchecked(&a, &b, cap)?;
                Ok((report::crossing_report(&pkg, &a, &b), Some(pkg)))
            };
            let r = match &maps {
                Some(dir) => {
                    let (r, pkg) = build()?;
                    write_maps(dir, pkg.as_ref().expect("built"))?;
                    r
                }
                None => {
                    let k = key("crossing-check", &[], &[&a, &b]);
                    ctx.cache.get_or(&k, ctx.err, || build().map(|(r, _)| r))?
                }
            };
            Ok(Output { text: ctx.render(&r, report::CrossingReport::text), ok: r.passed() })
        }
        Command::Homology { grid } => {
            let g = load_grid(&grid)?;
            let r = ctx.homology(&g)?;
            Ok(Output { text: ctx.render(&r, HomologyReport::text), ok: r.stabilized })
        }
        Command::Torsion { grid } => {
            let g = load_grid(&grid)?;
            let r = TorsionSummary::from(&ctx.homology(&g)?);
            Ok(Output { text: ctx.render(&r, TorsionSummary::text), ok: r.order.is_some() })
        }
        Command::Tilde { grid } => {
            let g = load_grid(&grid)?;
            check_cap(&g, cap)?;
            ctx.progress(&format!("tilde homology, n={}", g.n()));
            let k = key("tilde", &[], &[&g]);
            let r = ctx.cache.get_or(&k, ctx.err, || report::tilde_report(&g, cap))?;
            Ok(Output::ok(ctx.render(&r, report::TildeReport::text)))
        }
        Command::Lbound { certificate } => {
            let json = std::fs::read_to_string(&certificate)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", certificate.display())))?;
            let base = certificate.parent().unwrap_or(Path::new("."));
            let cert = parse_certificate(&json, base)?;
            check_cap(&cert.grids[0], cap)?;
            ctx.progress(&format!("verifying {} step(s), n={}", cert.steps(), cert.grids[0].n()));
            let tags = cert.directions.iter().map(|d| d.tag()).collect::<Vec<_>>().join(",");
            let grids: Vec<&GridDiagram> = cert.grids.iter().collect();
            let k = key("lbound", &[("direction", tags)], &grids);
            let n = cert.grids[0].n();
            let r = ctx
                .cache
                .get_or(&k, ctx.err, || -> Result<_, Failure> { Ok(report::lbound_json(&lbound(&cert, cap)?, n)) })?;
            Ok(Output { text: ctx.render(&r, report::LBoundJson::text), ok: r.consistent && r.evidence.residual_zero })
        }
        Command::Catalog(CatalogCommand::List) => {
            let names: Vec<&str> = catalog::ENTRIES.iter().map(|(n, _)| *n).collect();
            Ok(Output::ok(ctx.render(&names, |v| v.iter().map(|n| format!("{n}\n")).collect())))
        }
        Command::Catalog(CatalogCommand::Show { name }) => {
            let g = catalog::grid(&name).ok_or_else(|| Failure::Usage(format!("no catalog grid named `{name}`")))?;
            let text = serialize_grid(&g);
            #[derive(Serialize)]
            struct Shown<'a> {
                name: &'a str,
                n: usize,
                x: &'a [usize],
                o: &'a [usize],
            }
            let shown = Shown { name: &name, n: g.n(), x: g.x_rows(), o: g.o_rows() };
            Ok(Output::ok(ctx.render(&shown, |_| text)))
        }
    }
}

fn write_maps(dir: &Path, pkg: &CrossingPackage) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    for (name, f) in
        [("c_minus", &pkg.c_minus), ("c_plus", &pkg.c_plus), ("h_minus", &pkg.h_minus), ("h_plus", &pkg.h_plus)]
    {
        let path = dir.join(format!("{name}.json"));
        let mut s = serde_json::to_string_pretty(&report::export_map(f)).expect("maps serialize");
        s.push('\n');
        std::fs::write(&path, s).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Run the tool on `args` (including the program name) and return the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let cache = if cli.opts.no_cache { Cache::disabled() } else { Cache::from_env() };
    let jobs = cli.opts.jobs;
    let mut ctx = Ctx { opts: cli.opts, cache, err };
    let command = cli.command;
    let result = match jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(command, &mut ctx)),
            Err(e) => Err(Failure::Usage(format!("cannot start {k} workers: {e}"))),
        },
        None => dispatch(command, &mut ctx),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let (Failure::Usage(m) | Failure::Verify(m)) = &f;
            let _ = writeln!(ctx.err, "error: {m}");
            f.code()
        }
    }
}
