mod args;
mod cmd;
mod out;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use srkit::{Exec, Limits};

use args::{Cli, Command};
use out::{usage, CliResult, Ctx, Report};

const ENV_GUARD: &str = "SRKIT_MAX_ENUM";

fn limits(cli: &Cli) -> CliResult<Limits> {
    let from_env = match std::env::var(ENV_GUARD) {
        Ok(v) => Some(
            v.trim()
                .parse::<u128>()
                .map_err(|_| usage(format!("{ENV_GUARD} must be a positive integer, got '{v}'")))?,
        ),
        Err(_) => None,
    };
    let mut lim = Limits::default();
    if let Some(max) = cli.max_enum.or(from_env) {
        if max == 0 {
            return Err(usage("the enumeration guard must be positive"));
        }
        lim.max_codewords = max;
        lim.max_subspaces = max;
    }
    if let Some(n) = cli.threads {
        if n.get() == 1 {
            lim.exec = Exec::Sequential;
        } else {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.get())
                .build_global()
                .map_err(|e| usage(format!("thread pool: {e}")))?;
        }
    }
    Ok(lim)
}

fn dispatch(cli: &Cli) -> CliResult<Report> {
    let ctx = Ctx {
        format: cli.format,
        limits: limits(cli)?,
    };
    match &cli.command {
        Command::Bounds(a) => cmd::bounds::run(&ctx, a),
        Command::Check(a) => cmd::code::check(&ctx, a),
        Command::Dual(a) => cmd::code::dual(&ctx, a),
        Command::Shorten(a) => cmd::code::shorten(&ctx, a),
        Command::Puncture(a) => cmd::code::puncture(&ctx, a),
        Command::Distributions(a) => cmd::dist::distributions(&ctx, a),
        Command::Macwilliams(a) => cmd::dist::macwilliams(&ctx, a),
        Command::Omega(a) => cmd::omega::run(&ctx, a),
        Command::Construct { which } => cmd::construct::run(&ctx, which),
        Command::Asymptotics(a) => cmd::asym::run(&ctx, a),
        Command::SphereVolume(a) => cmd::bounds::sphere_volume(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(report.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if report.negative { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("srkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
