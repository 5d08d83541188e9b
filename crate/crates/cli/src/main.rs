use std::process::ExitCode;

use ads3s3_cli::{diagnostic, emit, execute, parse_args};

fn main() -> ExitCode {
    let cli = match parse_args(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own code for usage errors is 2, which is reserved here
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("{}", diagnostic(&e));
                return ExitCode::from(1);
            }
            if !out.passed {
                eprintln!("error: numeric check exceeded its tolerance");
            }
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(1)
        }
    }
}
