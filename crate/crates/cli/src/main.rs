use std::process::ExitCode;

use clap::Parser;
use homdend_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let rendered = report.render(cli.json);
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            return fail(&CliError::Io(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
    }
    print!("{rendered}");
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&e.to_json()).expect("plain data")
    );
    ExitCode::from(e.exit_code() as u8)
}
