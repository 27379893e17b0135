use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use braidalg::braided::Kind;
use braidalg_cli::{BackendKind, Cache, CliError, Format, HilbertTarget, Report, RunConfig, Runner, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "braidalg", version)]
#[command(about = "Decompose and verify braided powers of simple U_q(sl2)-modules")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Scalar backend
    #[arg(long, global = true, value_enum, default_value_t = BackendKind::Specialize)]
    backend: BackendKind,

    /// Specialization point NUM/DEN (default 7/5)
    #[arg(long, global = true)]
    q0: Option<String>,

    /// Seed choosing the specialization point when --q0 is absent
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Directory for cached results (default: $HOME/.cache/braidalg)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Ignore and do not write the cache
    #[arg(long, global = true)]
    no_cache: bool,

    /// Largest weight block or kernel system allowed
    #[arg(long, global = true, default_value_t = braidalg::braided::DEFAULT_MAX_BLOCK)]
    max_block: usize,

    /// Largest tensor degree any command may reach
    #[arg(long, global = true, default_value_t = 16)]
    max_degree: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Sym,
    Ext,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Sym => Kind::Sym,
            KindArg::Ext => Kind::Ext,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose S^n or Λ^n of V_l and compare with the closed form
    Decompose {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Sym)]
        kind: KindArg,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        l_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Print a Hilbert function with its expected values
    Hilbert {
        #[arg(value_enum)]
        target: HilbertTarget,
        /// Module V_l (braided, poisson)
        #[arg(long, required_if_eq_any([("target", "braided"), ("target", "poisson")]))]
        l: Option<usize>,
        /// Number of variables minus one (veronese)
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Veronese degree (veronese)
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Sym)]
        kind: KindArg,
        /// Top degree (braided, poisson)
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Top Veronese degree (veronese)
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("braidalg"))
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let g = cli.global;
    let cache_dir = if g.no_cache { None } else { g.cache_dir.or_else(default_cache_dir) };
    let config = RunConfig::build(g.backend, g.q0.as_deref(), g.seed, g.max_block, g.max_degree, g.format, cache_dir.clone())?;
    let runner = Runner::new(config, Cache::new(cache_dir));
    match cli.command {
        Command::Decompose { l, n, kind } => runner.decompose(l, n, kind.into()),
        Command::Verify { suite, l_max, n_max } => runner.verify(suite, l_max, n_max),
        Command::Hilbert {
            target,
            l,
            n,
            d,
            kind,
            n_max,
            k_max,
        } => match target {
            HilbertTarget::Braided => runner.hilbert_braided(l.expect("required by clap"), kind.into(), n_max),
            HilbertTarget::Poisson => runner.hilbert_poisson(l.expect("required by clap"), n_max),
            HilbertTarget::Veronese => runner.hilbert_veronese(n, d, k_max),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    let outcome = run(cli).and_then(|report| Ok((report.render(format)?, report.exit_code())));
    match outcome {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("braidalg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
