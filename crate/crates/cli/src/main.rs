use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};
use fanpart_cli::{
    compute, render_example, render_report, run_example, run_selftest, to_json, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "fanpart", version, about = "Exact obstruction computation for fan partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for n = 2a + 2b.
    Compute {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(short, long)]
        verbose: bool,
    },
    /// Worked fixtures: z8 or z4.
    Example {
        name: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Invariant suites at small sizes.
    Selftest {
        #[arg(long, hide = true)]
        inject_sign_fault: bool,
    },
}

fn write(path: &PathBuf, body: &str) -> Result<(), i32> {
    std::fs::write(path, body).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn run(cli: Cli) -> Result<i32, i32> {
    match cli.command {
        Command::Compute { a, b, json, verbose } => {
            if a == 0 || b == 0 || a + b < 3 {
                eprintln!("error: need a >= 1, b >= 1 and n = 2a+2b >= 6");
                return Err(EXIT_USAGE);
            }
            let cert = compute(a, b).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_MISMATCH
            })?;
            print!("{}", render_report(&cert, verbose));
            if let Some(p) = json {
                write(&p, &to_json(&cert))?;
            }
            Ok(if cert.certificate.positive() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Example { name, json } => {
            let Some(r) = run_example(&name) else {
                eprintln!("error: unknown example {name:?} (expected z8 or z4)");
                return Err(EXIT_USAGE);
            };
            print!("{}", render_example(&r));
            if let Some(p) = json {
                write(&p, &to_json(&r))?;
            }
            Ok(if r.matches { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Selftest { inject_sign_fault } => {
            let results = run_selftest(inject_sign_fault);
            let mut ok = true;
            for r in &results {
                let tag = match (r.passed, r.informational) {
                    (true, _) => "ok  ",
                    (false, true) => "note",
                    (false, false) => "FAIL",
                };
                println!("[{tag}] {}", r.name);
                ok &= r.passed || r.informational;
            }
            Ok(if ok { EXIT_OK } else { EXIT_USAGE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = run(cli).unwrap_or_else(|c| c);
    ExitCode::from(code as u8)
}
