mod args;
mod cache;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use cache::Cache;

fn threads(cli: &Cli) -> anyhow::Result<Option<usize>> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var("FS_THREADS") {
        Ok(s) => Ok(Some(s.trim().parse().map_err(|_| anyhow::anyhow!("FS_THREADS must be a positive integer, got `{s}`"))?)),
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(n) = threads(cli)? {
        if n == 0 {
            anyhow::bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let cache = Cache::new(!cli.no_cache);
    match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a, &cache),
        Command::Verify(a) => commands::verify(a, &cache),
        Command::Hwv(a) => commands::hwv(a),
        Command::Decompose(a) => commands::decompose(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
