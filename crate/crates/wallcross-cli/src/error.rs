use thiserror::Error;
use wallcross::flips::FlipError;
use wallcross::lattice::LatticeError;
use wallcross::transition::TransitionError;
use wallcross::walls::WallError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("config is missing `{0}` for this subcommand")]
    MissingField(&'static str),
    #[error("subcommand `{0}` needs --config")]
    NoConfig(&'static str),
    #[error("surface: {0}")]
    Lattice(#[from] LatticeError),
    #[error("walls: {0}")]
    Wall(#[from] WallError),
    #[error("transition: {0}")]
    Transition(#[from] TransitionError),
    #[error("flips: {0}")]
    Flip(#[from] FlipError),
    #[error("output: {0}")]
    Output(String),
}
