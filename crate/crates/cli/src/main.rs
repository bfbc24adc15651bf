//! `lrcone`: command-line access to Horn data, membership, extremal rays,
//! facet decompositions and bounded Hilbert bases.

mod commands;
mod tables;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrcone::cones::ConeKind;
use lrcone::oracle::SpectrumMode;
use lrcone::rays::RayEnumerator;
use lrcone::Error;

/// Environment variable naming a directory for cached sub-cone ray sets.
pub const CACHE_ENV: &str = "LRCONE_CACHE_DIR";

/// Largest r for ray enumeration without `--extended`.
pub const RAY_CEILING: usize = 6;
/// Largest r for a Hilbert search at the default bound without `--extended`.
pub const HILBERT_CEILING: usize = 5;

#[derive(Parser)]
#[command(name = "lrcone", version, about = "Littlewood-Richardson cones: Horn inequalities, rays and Hilbert bases")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lift the default rank ceilings.
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// Ray counts of LR and EqLR for r = 1..max-r.
    RayCounts,
    /// Every EqLR ray, split by trace slack zero / positive.
    RayLists,
    /// EqLR ray counts against bounded Hilbert basis sizes.
    HilbertCounts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Equal,
    Majorized,
}

impl From<ModeArg> for SpectrumMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Equal => SpectrumMode::Equal,
            ModeArg::Majorized => SpectrumMode::Majorized,
        }
    }
}

fn parse_kind(s: &str) -> Result<ConeKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// List the Horn data of size d.
    Horn {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long)]
        d: usize,
    },
    /// List the extremal rays of a pointed cone.
    Rays {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value = "eqlr", value_parser = parse_kind)]
        kind: ConeKind,
    },
    /// Type I rays and induction images on one Horn facet.
    Facet {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Input subsets, e.g. "{2};{2}".
        #[arg(long = "I")]
        i_sets: String,
        /// Output subset, e.g. "{3}".
        #[arg(long = "K")]
        k_set: String,
        #[arg(long, default_value = "eqlr", value_parser = parse_kind)]
        kind: ConeKind,
    },
    /// Test membership of a point such as "1,1;1,1;2,1".
    Member {
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "eqlr", value_parser = parse_kind)]
        kind: ConeKind,
    },
    /// Shrink block j of an EqLR lattice point into LR.
    Shadow {
        #[arg(long)]
        point: String,
        #[arg(long)]
        j: usize,
    },
    /// Indecomposable lattice points with largest output part at most the bound.
    Hilbert {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value = "eqlr", value_parser = parse_kind)]
        kind: ConeKind,
        /// Defaults to one more than the largest first output part over the rays.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Summary tables.
    Tables {
        #[arg(long, value_enum)]
        which: TableKind,
        #[arg(long, default_value_t = 5)]
        max_r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// Eigenvalues of sums of randomly conjugated Hermitian matrices.
    Sample {
        /// Input spectra, one block per matrix, e.g. "2,0.5,-1;1,1,0".
        #[arg(long)]
        spectra: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Equal)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of the positive semidefinite term in majorized mode.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

/// Shared state for one invocation.
pub struct Context {
    pub format: Format,
    pub extended: bool,
    pub enumerator: RayEnumerator,
}

impl Context {
    pub fn ray_ceiling(&self) -> usize {
        if self.extended {
            usize::MAX
        } else {
            RAY_CEILING
        }
    }

    pub fn check_ray_rank(&self, r: usize) -> lrcone::Result<()> {
        if r > self.ray_ceiling() {
            return Err(Error::ResourceLimit(format!(
                "r = {r} is above the default ceiling r <= {RAY_CEILING}; pass --extended to run it"
            )));
        }
        Ok(())
    }
}

/// The three renderings of a command's result.
pub struct Rendered {
    pub text: String,
    pub tsv: String,
    pub json: String,
}

impl Rendered {
    fn pick(self, format: Format) -> String {
        match format {
            Format::Text => self.text,
            Format::Tsv => self.tsv,
            Format::Json => self.json,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Shape(_)
        | Error::Domain(_)
        | Error::Range(_)
        | Error::BoxOverflow { .. }
        | Error::Datum(_)
        | Error::Lineality(_)
        | Error::Parse(_) => 2,
        Error::ResourceLimit(_) => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> lrcone::Result<String> {
    let GlobalOpts {
        format,
        output: _,
        threads,
        extended,
    } = cli.global;
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Range("--threads must be at least 1".into()));
        }
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if extended {
        eprintln!("warning: --extended lifts the rank ceilings; large runs can take a long time and a lot of memory");
    }
    let mut enumerator = RayEnumerator::new().with_max_rank(if extended { usize::MAX } else { RAY_CEILING });
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        enumerator = enumerator.with_cache_dir(PathBuf::from(dir));
    }
    let ctx = Context {
        format,
        extended,
        enumerator,
    };
    let rendered = match cli.command {
        Command::Horn { r, s, d } => commands::horn(r, s, d)?,
        Command::Rays { r, s, kind } => commands::rays(&ctx, r, s, kind)?,
        Command::Facet {
            r,
            s,
            i_sets,
            k_set,
            kind,
        } => commands::facet(&ctx, r, s, &i_sets, &k_set, kind)?,
        Command::Member { point, kind } => commands::member(&point, kind)?,
        Command::Shadow { point, j } => commands::shadow(&point, j)?,
        Command::Hilbert { r, s, kind, bound } => commands::hilbert(&ctx, r, s, kind, bound)?,
        Command::Tables { which, max_r, s } => tables::table(&ctx, which, max_r, s)?,
        Command::Sample {
            spectra,
            mode,
            trials,
            seed,
            scale,
        } => commands::sample(&spectra, mode.into(), trials, seed, scale)?,
    };
    Ok(rendered.pick(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(text) => {
            let written = match &output {
                Some(path) => fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
