//! `gbk`: cohomology of homogeneous bundles on Grassmannians from the command line.

mod render;

use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use gbk_core::cache::CacheStore;
use gbk_core::fano::{enumerate_lemma54, screen};
use gbk_core::koszul::{analyze, build_table, euler_restriction, hilbert_series, TargetKind};
use gbk_core::theorem::{check_theorem1, check_theorem2, check_theorem3, cross_validate, parse_summands};
use gbk_core::{bott, parse_expr, BlockWeight, BundleExpr, Engine, Error, GrassContext};

use render::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "gbk",
    version,
    about = "Exact cohomology of homogeneous bundles on Grassmannians"
)]
struct Cli {
    /// Grassmannian of k-dimensional quotients of C^n, as `k,n`.
    #[arg(long, global = true, value_name = "K,N")]
    grass: Option<GrassContext>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (default: logical cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Bypass the persistent cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of a bundle expression.
    Rank { expr: String },
    /// Decomposition of the dual bundle.
    Dual { expr: String },
    /// Decomposition into irreducible homogeneous bundles.
    Decompose { expr: String },
    /// Cohomology by Bott's theorem.
    Bott { expr: String },
    /// Koszul spectral-sequence table and verdict for one degree.
    Koszul {
        #[arg(long = "E", alias = "e", value_name = "EXPR")]
        e: String,
        #[arg(long = "F", alias = "f", value_name = "EXPR")]
        f: String,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Euler characteristic of E restricted to the zero locus of F.
    Euler {
        #[arg(long = "E", alias = "e", value_name = "EXPR")]
        e: String,
        #[arg(long = "F", alias = "f", value_name = "EXPR")]
        f: String,
    },
    /// χ(O_X(r)) over an inclusive range `lo..hi`.
    Hilbert {
        #[arg(long = "F", alias = "f", value_name = "EXPR")]
        f: String,
        #[arg(long, value_name = "LO..HI", allow_hyphen_values = true)]
        range: String,
    },
    /// Run the Theorem 1, 2 or 3 scan on F = EXPR[,EXPR…].
    Check {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[arg(long = "F", alias = "f", value_name = "EXPR[,EXPR…]")]
        f: String,
    },
    /// Fano, dimension and exclusion screen for F = EXPR[,EXPR…].
    Screen {
        #[arg(long = "F", alias = "f", value_name = "EXPR[,EXPR…]")]
        f: String,
    },
    /// Enumerate small highest weights (JSON lines).
    Enumerate {
        #[arg(long, required = true)]
        lemma54: bool,
        #[arg(long)]
        k: usize,
    },
    /// Compare full scans with the condition-system searches.
    Crossval {
        /// First-block entries `a,b,…` (optionally `a,b|c,…`) or `irr[…]`.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Restriction,
    Ideal,
}

impl From<Target> for TargetKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Restriction => TargetKind::Restriction,
            Target::Ideal => TargetKind::Ideal,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TheoremArg {
    Thm1,
    Thm2,
    Thm3,
}

/// Failure that maps to exit code 2, with the offending input when known.
struct Usage {
    error: anyhow::Error,
    input: Option<String>,
}

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage {
            error: e.into(),
            input: None,
        }
    }
}

fn parse_in(text: &str, ctx: GrassContext) -> Result<BundleExpr, Usage> {
    parse_expr(text, ctx).map_err(|e| Usage {
        error: e.into(),
        input: Some(text.to_string()),
    })
}

fn summands_in(text: &str, ctx: GrassContext) -> Result<Vec<BundleExpr>, Usage> {
    parse_summands(text, ctx).map_err(|e| Usage {
        error: e.into(),
        input: Some(text.to_string()),
    })
}

fn parse_range(text: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("range `{text}` is not of the form lo..hi"))?;
    let lo = lo
        .trim()
        .parse()
        .with_context(|| format!("bad lower bound in `{text}`"))?;
    let hi = hi
        .trim()
        .parse()
        .with_context(|| format!("bad upper bound in `{text}`"))?;
    if lo > hi {
        bail!("empty range `{text}`");
    }
    Ok((lo, hi))
}

fn parse_beta(text: &str, ctx: GrassContext) -> Result<BlockWeight, Usage> {
    let wrapped = if text.trim_start().starts_with("irr[") {
        text.to_string()
    } else {
        format!("irr[{text}]")
    };
    match parse_in(&wrapped, ctx)? {
        BundleExpr::Irr(w) => Ok(w),
        other => Err(anyhow!("`{other}` is not an irreducible weight").into()),
    }
}

fn run(cli: &Cli) -> Result<Output, Usage> {
    let engine = if cli.no_cache {
        Engine::new()
    } else {
        Engine::new().with_cache(Arc::new(CacheStore::from_env()))
    };
    let grass = || {
        cli.grass
            .ok_or_else(|| Usage::from(anyhow!("--grass k,n is required for this subcommand")))
    };
    Ok(match &cli.command {
        Command::Rank { expr } => {
            let ctx = grass()?;
            let e = parse_in(expr, ctx)?;
            Output::Rank {
                grass: ctx,
                expr: e.to_string(),
                rank: engine.evaluate(ctx, &e)?.dim(),
            }
        }
        Command::Dual { expr } | Command::Decompose { expr } => {
            let ctx = grass()?;
            let mut e = parse_in(expr, ctx)?;
            if matches!(cli.command, Command::Dual { .. }) {
                e = BundleExpr::dual(e);
            }
            let d = engine.evaluate(ctx, &e)?;
            Output::Decomposition {
                grass: ctx,
                expr: e.to_string(),
                decomposition: (*d).clone(),
            }
        }
        Command::Bott { expr } => {
            let ctx = grass()?;
            let e = parse_in(expr, ctx)?;
            Output::Profile(bott::cohomology(&engine, ctx, &e)?)
        }
        Command::Koszul { e, f, target, degree } => {
            let ctx = grass()?;
            let (e, f) = (parse_in(e, ctx)?, parse_in(f, ctx)?);
            let table = build_table(&engine, ctx, &e, &f)?;
            let target = TargetKind::from(*target);
            Output::Koszul {
                verdict: analyze(&table, target, *degree),
                target,
                degree: *degree,
                table,
            }
        }
        Command::Euler { e, f } => {
            let ctx = grass()?;
            let (e, f) = (parse_in(e, ctx)?, parse_in(f, ctx)?);
            Output::Euler {
                euler: euler_restriction(&engine, ctx, &e, &f)?,
            }
        }
        Command::Hilbert { f, range } => {
            let ctx = grass()?;
            let f = parse_in(f, ctx)?;
            let (lo, hi) = parse_range(range)?;
            Output::Hilbert(hilbert_series(&engine, ctx, &f, lo, hi)?)
        }
        Command::Check { theorem, f } => {
            let ctx = grass()?;
            let summands = summands_in(f, ctx)?;
            let report = match theorem {
                TheoremArg::Thm1 => check_theorem1(&engine, ctx, &summands)?,
                TheoremArg::Thm2 => check_theorem2(&engine, ctx, &summands)?,
                TheoremArg::Thm3 => check_theorem3(&engine, ctx, &summands)?,
            };
            Output::Theorem(Box::new(report))
        }
        Command::Screen { f } => {
            let ctx = grass()?;
            let sum =
                BundleExpr::sum_of(summands_in(f, ctx)?).ok_or_else(|| anyhow!("--F needs at least one summand"))?;
            Output::Screen(screen(ctx, engine.evaluate(ctx, &sum)?.as_ref())?)
        }
        Command::Enumerate { k, .. } => Output::Lemma(enumerate_lemma54(*k)?),
        Command::Crossval { beta } => {
            let ctx = grass()?;
            let beta = parse_beta(beta, ctx)?;
            Output::Cross(cross_validate(&engine, &beta)?)
        }
    })
}

fn report_usage(u: &Usage) {
    eprintln!("error: {:#}", u.error);
    if let (Some(input), Some(Error::Parse { offset, .. })) = (&u.input, u.error.downcast_ref::<Error>()) {
        eprintln!("  {input}");
        eprintln!("  {}^", " ".repeat(input[..(*offset).min(input.len())].chars().count()));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            let failed = out.is_failure();
            if let Err(e) = out.print(cli.format) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(u) => {
            report_usage(&u);
            ExitCode::from(2)
        }
    }
}
