use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use semitoric_cli::{execute, CliError, Command, Flags, Window};

/// Seminormal monoids and fans carrying lattice data.
#[derive(Parser)]
#[command(name = "semitoric", version)]
struct Cli {
    command: Command,
    /// Input documents; `-` reads stdin.
    #[arg(required = true)]
    files: Vec<String>,
    /// Cone key (e.g. `0,1`) or alias.
    #[arg(long)]
    cone: Option<String>,
    /// `N` for `[0,N]²`, or `x0,y0,x1,y1`.
    #[arg(long, default_value = "4", value_parser = parse_window, allow_hyphen_values = true)]
    window: Window,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn parse_window(s: &str) -> Result<Window, String> {
    Window::parse(s).ok_or_else(|| format!("bad window {s:?}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let err = CliError::Usage {
                message: e.kind().to_string(),
                pointer: None,
            };
            print!("{}", err.into_result().render());
            return ExitCode::from(3);
        }
    };
    let flags = Flags {
        cone: cli.cone,
        window: cli.window,
    };
    let result = execute(cli.command, &cli.files, &flags);
    let text = result.render();
    match (&cli.out, result.status.exit_code()) {
        (Some(path), 0 | 1) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("{path}: {e}");
                return ExitCode::from(3);
            }
        }
        _ => print!("{text}"),
    }
    if let semitoric_cli::Payload::Json(v) = &result.payload {
        if let Some(e) = v.get("error") {
            eprintln!("semitoric: {}", e["message"].as_str().unwrap_or("error"));
        }
    }
    ExitCode::from(result.status.exit_code() as u8)
}
