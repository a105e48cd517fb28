use std::io::Write;

use clap::Parser;
use qpsurf::cli::{run, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let report_path = cli.report.clone();
    let out = run(cli, argv);
    let text = serde_json::to_string_pretty(&out.to_json()).expect("output serializes");
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            std::process::exit(2);
        }
    }
    std::process::exit(out.exit_code());
}
