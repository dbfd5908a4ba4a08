//! `wallcross`: batch front end for wall enumeration, transition terms, flips and
//! the self-verification suite.

mod config;
mod error;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wallcross::lattice::{make_surface, SurfaceLattice};
use wallcross::verify::{run_all, VerifyOptions};
use wallcross::walls::WallType;

use config::{Format, Formula, JobConfig, Normalization};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Wall-crossing terms of Donaldson invariants on rational surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON job description.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; overrides the config's `output`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Multiply degree-e terms by 2^e (the other common μ-map convention).
    #[arg(long, global = true)]
    km_normalization: bool,
    /// Cross-check the wall enumeration against a brute-force box of this radius.
    #[arg(long, global = true)]
    oracle_radius: Option<i64>,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Formulas used by `delta`.
    #[arg(long, global = true, value_enum)]
    formula: Option<Formula>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice invariants of the configured surface.
    Surface,
    /// Walls crossed by the segment from L_minus to L_plus.
    Walls,
    /// Change of the invariant across those walls.
    Delta,
    /// Flip stages and critical parameter values for each wall.
    Flips,
    /// Run the full identity suite; exits nonzero if any check fails.
    Verify,
}

struct Job {
    cfg: JobConfig,
    lat: SurfaceLattice,
}

impl Job {
    fn load(cli: &Cli, name: &'static str) -> Result<Self, CliError> {
        let path = cli.config.as_ref().ok_or(CliError::NoConfig(name))?;
        let cfg = JobConfig::load(path)?;
        let lat = make_surface(&cfg.surface)?;
        Ok(Job { cfg, lat })
    }

    fn wall_type(&self) -> Result<WallType, CliError> {
        Ok(WallType::new(&self.lat, self.cfg.delta()?, self.cfg.c()?)?)
    }
}

fn run(cli: &Cli) -> Result<(report::Report, Format), CliError> {
    let mut format = cli.format;
    let rep = match cli.command {
        Command::Surface => {
            let job = Job::load(cli, "surface")?;
            format = format.or(job.cfg.output);
            report::surface(&job.lat)
        }
        Command::Walls => {
            let job = Job::load(cli, "walls")?;
            format = format.or(job.cfg.output);
            let wt = job.wall_type()?;
            report::walls(
                &job.lat,
                &wt,
                &job.cfg.l_minus()?,
                &job.cfg.l_plus()?,
                cli.oracle_radius,
            )?
        }
        Command::Delta => {
            let job = Job::load(cli, "delta")?;
            format = format.or(job.cfg.output);
            let wt = job.wall_type()?;
            let normalization = if cli.km_normalization {
                Normalization::Km
            } else {
                job.cfg.normalization
            };
            report::delta(
                &job.lat,
                &wt,
                &job.cfg.l_minus()?,
                &job.cfg.l_plus()?,
                &job.cfg.alpha()?,
                job.cfg.insert_point,
                normalization,
                cli.formula.or(job.cfg.formula).unwrap_or_default(),
            )?
        }
        Command::Flips => {
            let job = Job::load(cli, "flips")?;
            format = format.or(job.cfg.output);
            let wt = job.wall_type()?;
            report::flips(&job.lat, &wt, &job.cfg.l_minus()?, &job.cfg.l_plus()?)?
        }
        Command::Verify => {
            if let Some(path) = &cli.config {
                format = format.or(JobConfig::load(path)?.output);
            }
            let mut opts = VerifyOptions::default();
            if let Some(s) = cli.seed {
                opts.seed = s;
            }
            if let Some(r) = cli.oracle_radius {
                opts.oracle_radius = r;
            }
            report::verify(&run_all(&opts))
        }
    };
    Ok((rep, format.unwrap_or(Format::Json)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rep, format) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match render::render(&rep, format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if rep.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
