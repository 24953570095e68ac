use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::Parser;

use s3lite::error::SourceError;
use s3lite::Session;

/// An interpreter for a small dynamically-typed language with
/// class-vector method dispatch.
#[derive(Parser)]
#[command(name = "s3l", version, disable_help_subcommand = true)]
struct Cli {
    /// Script to run; starts a REPL when omitted
    #[arg(conflicts_with = "expr")]
    file: Option<String>,

    /// Evaluate a single expression and exit
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,

    /// Skip loading the standard prelude
    #[arg(long)]
    no_prelude: bool,

    /// Color diagnostics (accepted for compatibility; output is plain)
    #[arg(long, value_parser = ["never", "auto"], default_value = "auto")]
    color: String,
}

fn exit_code_for(err: &SourceError) -> u8 {
    match err {
        SourceError::Runtime(_) => 1,
        SourceError::Lex(_) | SourceError::Parse(_) => 2,
    }
}

fn flush_session(session: &mut Session) -> bool {
    print!("{}", session.take_output());
    let diagnostics = session.take_diagnostics();
    let mut had_error = false;
    for d in &diagnostics {
        eprintln!("{}", d.render());
        had_error |= matches!(d.severity, s3lite::eval::Severity::Error);
    }
    had_error
}

fn make_session(no_prelude: bool) -> Result<Session, ExitCode> {
    if no_prelude {
        return Ok(Session::bare());
    }
    Session::with_prelude().map_err(|e| {
        eprintln!("{e}");
        ExitCode::from(1)
    })
}

fn run_source(source: &str, no_prelude: bool) -> ExitCode {
    let mut session = match make_session(no_prelude) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let result = session.run(source);
    let had_error = flush_session(&mut session);
    match result {
        Ok(_) if !had_error => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            // Runtime errors were already reported as diagnostics.
            if !matches!(e, SourceError::Runtime(_)) {
                eprintln!("{e}");
            }
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn repl(no_prelude: bool) -> ExitCode {
    let mut session = match make_session(no_prelude) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        eprint!("s3l> ");
        let _ = std::io::stderr().flush();
        let line = match lines.next() {
            Some(Ok(line)) => line,
            Some(Err(e)) => {
                eprintln!("error reading input: {e}");
                return ExitCode::from(3);
            }
            None => return ExitCode::SUCCESS,
        };
        if line.trim().is_empty() {
            continue;
        }
        // Errors are reported and the REPL keeps going.
        if let Err(e) = session.run(&line) {
            if !matches!(e, SourceError::Runtime(_)) {
                eprintln!("{e}");
            }
        }
        flush_session(&mut session);
        let _ = std::io::stdout().flush();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(expr) = &cli.expr {
        return run_source(expr, cli.no_prelude);
    }
    if let Some(path) = &cli.file {
        let source = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("s3l: cannot read {path}: {e}");
                return ExitCode::from(3);
            }
        };
        return run_source(&source, cli.no_prelude);
    }
    repl(cli.no_prelude)
}
