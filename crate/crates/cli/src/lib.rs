//! Command-line front end: one subcommand per experiment, CSV or JSON
//! emission, and eigenvalue-cache management.
//!
//! Exit codes: 0 success, 1 rejected precondition or runtime failure
//! (diagnostic on stderr), 2 usage errors (unknown flags, missing values).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod output;

use config::{OutputFormat, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "hecke-lab",
    about = "Desk-scale experiments on twisted eigenform coefficients, their L-functions, and moment sums",
    version
)]
pub struct Cli {
    /// Optional key=value config file (sieve_limit, eigenform_n, cache_dir,
    /// threads, format); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Prime sieve limit.
    #[arg(long, global = true)]
    pub sieve_limit: Option<u64>,

    /// Eigenform coefficient bound (grown automatically when a command
    /// needs more).
    #[arg(long, global = true)]
    pub eigenform_n: Option<u64>,

    /// Directory for the tau-table cache; HECKE_CACHE_DIR overrides the
    /// config file, this flag overrides both.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for moment sweeps (output is identical for any value).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format: csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit n rows of exact tau(n) and normalized lambda_f(n).
    Eigenvalues {
        #[arg(long)]
        n: u64,
    },
    /// Enumerate the character group mod q with conductor metadata.
    Characters {
        #[arg(long)]
        q: u64,
    },
    /// L(1/2 + it, f (x) chi) for primitive characters mod q.
    Lvalues {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Restrict to one character by canonical index.
        #[arg(long)]
        chi: Option<u64>,
        /// Smoothed-truncation length (default 30 q (1+|t|)).
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Constant-free majorant prime sums for log |L(1/2 + it)|.
    Majorant {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long)]
        x: f64,
        /// Growth exponent A in the |t| <= q^A hypothesis.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value = "general")]
        variant: String,
        #[arg(long)]
        chi: Option<u64>,
    },
    /// S_m(q, Y; f) over primitive (or all) characters mod q.
    MomentsFixed {
        /// One or more moduli, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Inner length; defaults to Y = q.
        #[arg(long)]
        y: Option<u64>,
        /// One or more moment orders, comma separated; inner sums are
        /// computed once and shared across them.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<f64>,
        /// Smoothing parameter U >= 4 for the inner kernel.
        #[arg(long)]
        u: Option<f64>,
        /// Use the default kernel U = q^0.2 clamped to [4, 100].
        #[arg(long, default_value_t = false)]
        smooth: bool,
        #[arg(long, default_value = "primitive")]
        mode: String,
    },
    /// T_m(X, Y; f) over the quadratic family 8d, d odd square-free.
    MomentsQuad {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        /// Inner length; defaults to Y = X.
        #[arg(long)]
        y: Option<u64>,
        /// One or more moment orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<f64>,
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = false)]
        smooth: bool,
        /// Envelope parameter k in E(m, k, eps).
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Envelope parameter eps in E(m, k, eps).
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Smoothed quadratic character-sum verifier (lhs vs main term).
    VerifyPrsum {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        n: u64,
        /// Weight exponent on A(d)^{-k}.
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        #[arg(long, default_value_t = 8.0)]
        u: f64,
    },
    /// Twisted prime-sum cancellation against the sqrt(x) log^2 envelope.
    VerifyCancel {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        chi: Option<u64>,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Least-squares exponent fit over a moments CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// logq or logx; inferred from the family when omitted.
        #[arg(long)]
        axis: Option<String>,
    },
}

/// Merge defaults, config file, environment, and flags into the run config.
pub fn resolve_config(cli: &Cli) -> hecke_lab::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    cfg.apply_env();
    if let Some(v) = cli.sieve_limit {
        cfg.sieve_limit = v;
    }
    if let Some(v) = cli.eigenform_n {
        cfg.eigenform_n = v;
    }
    if let Some(dir) = &cli.cache_dir {
        cfg.cache_dir = Some(dir.clone());
    }
    if let Some(v) = cli.threads {
        cfg.threads = v;
    }
    if let Some(f) = &cli.format {
        cfg.format = OutputFormat::parse(f)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Run a parsed command to its rendered artifact.
pub fn execute(cli: &Cli) -> hecke_lab::Result<String> {
    let cfg = resolve_config(cli)?;
    let table = match &cli.command {
        Command::Eigenvalues { n } => commands::eigenvalues(&cfg, *n)?,
        Command::Characters { q } => commands::characters(*q)?,
        Command::Lvalues { q, t, chi, cutoff } => commands::lvalues(&cfg, *q, *t, *chi, *cutoff)?,
        Command::Majorant {
            q,
            t,
            x,
            a,
            variant,
            chi,
        } => commands::majorant(&cfg, *q, *t, *x, *a, variant, *chi)?,
        Command::MomentsFixed {
            q,
            y,
            m,
            u,
            smooth,
            mode,
        } => commands::moments_fixed(&cfg, q, *y, m, *u, *smooth, mode)?,
        Command::MomentsQuad {
            x,
            y,
            m,
            u,
            smooth,
            k,
            eps,
        } => commands::moments_quad(&cfg, x, *y, m, *u, *smooth, *k, *eps)?,
        Command::VerifyPrsum { x, n, k, u } => commands::verify_prsum(&cfg, *x, *n, *k, *u)?,
        Command::VerifyCancel {
            q,
            chi,
            t0,
            x,
            variant,
        } => commands::verify_cancel(&cfg, *q, *chi, *t0, *x, variant)?,
        Command::Fit { input, axis } => commands::fit(input, axis.as_deref())?,
    };
    Ok(table.render(cfg.format))
}

/// Full CLI entry: parse, execute, write. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let result = match &cli.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            match result {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
