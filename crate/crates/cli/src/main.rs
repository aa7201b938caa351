mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok,
    Io,
    Invalid,
    Budget,
    Mismatch,
}

impl Exit {
    fn code(self) -> u8 {
        match self {
            Exit::Ok => 0,
            Exit::Io => 1,
            Exit::Invalid => 2,
            Exit::Budget => 3,
            Exit::Mismatch => 4,
        }
    }
}

/// Workbench for string-replication systems.
#[derive(Parser, Debug)]
#[command(name = "replicap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Opts {
    /// TOML file whose keys mirror the flags.
    #[arg(long)]
    config: Option<PathBuf>,

    #[command(flatten)]
    run: RunConfig,
}

impl Opts {
    fn resolve(self) -> Result<RunConfig> {
        Ok(match &self.config {
            Some(path) => self.run.over(RunConfig::load(path)?),
            None => self.run,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-length closure counts as TSV.
    Enumerate(Opts),
    /// Every capacity statement that applies to a system.
    Capacity(Opts),
    /// Recompute the reversed tandem reference counts.
    Table1(Opts),
    /// Export a graph as DOT with its spectral radius.
    Automaton(Opts),
    /// Decide whether --target is in the closure.
    Membership(Opts),
    /// Run a named constructive procedure and print its trace.
    Construct {
        /// List procedure names and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the merged configuration as TOML.
    Config(Opts),
    /// Run the command named by `command` in a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn dispatch(name: &str, cfg: &RunConfig) -> Result<Exit> {
    match name {
        "enumerate" => commands::enumerate(cfg),
        "capacity" => commands::capacity(cfg),
        "table1" => commands::table1(cfg),
        "automaton" => commands::automaton(cfg),
        "membership" => commands::membership_cmd(cfg),
        "construct" => commands::construct(cfg),
        other => Err(anyhow!(replicap::Error::InvalidParameter(format!("unknown command '{other}'")))),
    }
}

fn run(cli: Cli) -> Result<Exit> {
    match cli.command {
        Command::Enumerate(o) => commands::enumerate(&o.resolve()?),
        Command::Capacity(o) => commands::capacity(&o.resolve()?),
        Command::Table1(o) => commands::table1(&o.resolve()?),
        Command::Automaton(o) => commands::automaton(&o.resolve()?),
        Command::Membership(o) => commands::membership_cmd(&o.resolve()?),
        Command::Construct { list: true, .. } => commands::list_procedures(),
        Command::Construct { opts, .. } => commands::construct(&opts.resolve()?),
        Command::Config(o) => {
            print!("{}", o.resolve()?.format());
            Ok(Exit::Ok)
        }
        Command::Run { config } => {
            let cfg = RunConfig::load(&config)?;
            let name = cfg.command.clone().ok_or_else(|| {
                anyhow!(replicap::Error::InvalidParameter("config has no 'command' key".into()))
            })?;
            dispatch(&name, &cfg)
        }
    }
}

fn classify(err: &anyhow::Error) -> Exit {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<replicap::Error>() {
            return match e {
                replicap::Error::BudgetExceeded { .. }
                | replicap::Error::NonConvergence(_)
                | replicap::Error::Overflow(_) => Exit::Budget,
                _ => Exit::Invalid,
            };
        }
        if cause.is::<std::io::Error>() {
            return Exit::Io;
        }
    }
    Exit::Invalid
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(exit) => ExitCode::from(exit.code()),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err).code())
        }
    }
}
