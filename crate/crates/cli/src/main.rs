use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use paradox_forge_cli::cli::Cli;
use paradox_forge_cli::commands::run;

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("PARADOX_FORGE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("PARADOX_FORGE_THREADS must be a positive integer, got {v:?}"))?;
        anyhow::ensure!(n > 0, "PARADOX_FORGE_THREADS must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// The error chain, skipping causes already quoted by the message above them.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !out.ends_with(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}
