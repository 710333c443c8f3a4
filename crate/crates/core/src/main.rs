use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use abeliter::abel::{AbelBranch, BranchId};
use abeliter::frac::{abel_fixed_points, iterate, tetration};
use abeliter::koenig::SchroederSolution;
use abeliter::manifest::manifest;
use abeliter::maps::{MapName, MapParams, MapSpec};
use abeliter::numeric::{parse_rational, render, PrecisionContext, Real};
use abeliter::plot::{abel_series, difference_series, grid, inverse_series, PlotFormat, PlotMode, PlotSeries};
use abeliter::{Error, Result};

/// Fractional iteration by Koenig's method at arbitrary precision.
#[derive(Parser)]
#[command(name = "abeliter", version)]
struct Cli {
    /// Decimal digits after the point in every printed value.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=2000))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct MapArgs {
    /// Logistic parameter, e.g. 3/2.
    #[arg(long)]
    lambda: Option<String>,
    /// Base c of c^x, e.g. 4/3 or sqrt(2).
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the constants manifest as `name = value` lines.
    Constants {
        /// Keep names containing this text, or matching an alias (alpha, beta, gamma, delta).
        #[arg(long)]
        filter: Option<String>,
    },
    /// Evaluate F(x) on a branch.
    Eval {
        #[arg(long)]
        branch: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Solve F(x) = t on a branch.
    Invert {
        #[arg(long)]
        branch: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// f^[t](x), by default the half-iterate. The branch `sqrt2exp` picks
    /// the branch containing x and prints both solutions on (2, 4).
    Halfiter {
        #[arg(long)]
        branch: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1/2")]
        t: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// T(c, t) for 1 < c < e^(1/e).
    Tetration {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Koenig limit of a catalog map started at raw x.
    Koenig {
        /// Catalog map name, e.g. sqrt2exp_fp2.
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        params: MapArgs,
    },
    /// Solutions of F(x) = x on a branch.
    FixedPoints {
        #[arg(long)]
        branch: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-10")]
        from: String,
        #[arg(long, allow_hyphen_values = true, default_value = "10")]
        to: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Emit sampled series of F, F^-1 or the scaled gap between the two solutions on (2, 4).
    Plot {
        /// Comma-separated branch ids; ignored in difference mode.
        #[arg(long, default_value = "sqrt2exp.I1")]
        branch: String,
        #[arg(long, default_value = "abel")]
        mode: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Distance kept from open ends of the interval or range.
        #[arg(long, default_value = "0.001")]
        margin: String,
        /// Output file, or a directory when several branches are given.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        map: MapArgs,
    },
}

fn params(map: &MapArgs, ctx: &PrecisionContext) -> Result<MapParams> {
    let parse = |s: &Option<String>| s.as_deref().map(|v| ctx.parse(v)).transpose();
    Ok(MapParams {
        lambda: parse(&map.lambda)?,
        base: parse(&map.base)?,
    })
}

fn branch(id: &str, map: &MapArgs, ctx: &PrecisionContext) -> Result<AbelBranch> {
    AbelBranch::build(id.parse()?, &params(map, ctx)?, ctx)
}

/// Branches of 2^(x/2) whose interval contains x.
fn sqrt2exp_branches(x: &Real) -> Result<Vec<BranchId>> {
    if *x < 2 {
        Ok(vec![BranchId::Sqrt2ExpI1])
    } else if *x > 2 && *x < 4 {
        Ok(vec![BranchId::Sqrt2ExpI2a, BranchId::Sqrt2ExpI2b])
    } else if *x > 4 {
        Ok(vec![BranchId::Sqrt2ExpI3])
    } else {
        Err(Error::Domain(format!("x = {} is a fixed point of 2^(x/2)", x.to_f64())))
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, text).map_err(|e| Error::Parameter(format!("cannot write {}: {e}", p.display()))),
    }
}

fn run(cli: Cli) -> Result<()> {
    let digits = cli.digits;
    let ctx = PrecisionContext::new(digits)?;
    match cli.command {
        Command::Constants { filter } => {
            for entry in manifest(digits, filter.as_deref())? {
                println!("{entry}");
            }
        }
        Command::Eval { branch: id, x, map } => {
            let b = branch(&id, &map, &ctx)?;
            println!("{}", render(&b.eval(&ctx.parse(&x)?)?, digits));
        }
        Command::Invert { branch: id, t, map } => {
            let b = branch(&id, &map, &ctx)?;
            println!("{}", render(&b.invert(&ctx.parse(&t)?)?, digits));
        }
        Command::Halfiter { branch: id, x, t, map } => {
            let x = ctx.parse(&x)?;
            let t = ctx.parse(&t)?;
            if id == "sqrt2exp" {
                let ids = sqrt2exp_branches(&x)?;
                for bid in &ids {
                    let b = AbelBranch::build(*bid, &MapParams::default(), &ctx)?;
                    let v = render(&iterate(&b, &x, &t)?, digits);
                    if ids.len() > 1 {
                        println!("{bid} = {v}");
                    } else {
                        println!("{v}");
                    }
                }
            } else {
                let b = branch(&id, &map, &ctx)?;
                println!("{}", render(&iterate(&b, &x, &t)?, digits));
            }
        }
        Command::Tetration { base, t } => {
            let v = tetration(&ctx.parse(&base)?, &ctx.parse(&t)?, &ctx)?;
            println!("{}", render(&v, digits));
        }
        Command::Koenig { map, x, params: p } => {
            let name: MapName = map.parse()?;
            let spec = MapSpec::new(name, &params(&p, &ctx)?, &ctx)?;
            let rep = SchroederSolution::new(Arc::new(spec)).at_raw(&ctx.parse(&x)?)?;
            println!("limit = {}", render(&rep.value, digits));
            println!("multiplier = {}", render(&rep.multiplier, digits));
            println!("iterations = {}", rep.iterations);
        }
        Command::FixedPoints { branch: id, from, to, map } => {
            let b = branch(&id, &map, &ctx)?;
            for r in abel_fixed_points(&b, &ctx.parse(&from)?, &ctx.parse(&to)?)? {
                println!("{}", render(&r, digits));
            }
        }
        Command::Plot {
            branch: ids,
            mode,
            from,
            to,
            step,
            format,
            margin,
            out,
            map,
        } => {
            let mode: PlotMode = mode.parse()?;
            let format: PlotFormat = format.parse()?;
            let points = grid(&parse_rational(&from)?, &parse_rational(&to)?, &parse_rational(&step)?)?;
            let margin = parse_rational(&margin)?;
            let series: Vec<PlotSeries> = if mode == PlotMode::Difference {
                vec![difference_series(&points, &ctx)?]
            } else {
                ids.split(',')
                    .map(|id| {
                        let b = branch(id.trim(), &map, &ctx)?;
                        match mode {
                            PlotMode::Abel => abel_series(&b, &points, &margin),
                            _ => inverse_series(&b, &points, &margin),
                        }
                    })
                    .collect::<Result<_>>()?
            };
            if let [one] = series.as_slice() {
                emit(out.as_deref(), &one.format(format))?;
            } else {
                let dir = out.ok_or_else(|| {
                    Error::Parameter("several branches need --out <directory>".into())
                })?;
                fs::create_dir_all(&dir)
                    .map_err(|e| Error::Parameter(format!("cannot create {}: {e}", dir.display())))?;
                let ext = match format {
                    PlotFormat::Csv => "csv",
                    PlotFormat::Json => "json",
                };
                let mode_name = if mode == PlotMode::Abel { "abel" } else { "inverse" };
                for s in &series {
                    let path = dir.join(format!("{}.{mode_name}.{ext}", s.branch_id));
                    emit(Some(&path), &s.format(format))?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
