use std::process::ExitCode;

use toledo_core::report::{parse_query, run_query, ParseError, EXIT_INPUT};
use toledo_core::Error;

fn main() -> ExitCode {
    let spec = match parse_query(std::env::args_os()) {
        Ok(spec) => spec,
        Err(ParseError::Cli(e)) => e.exit(),
        Err(ParseError::Invalid(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    match run_query(&spec) {
        Ok(doc) => {
            print!("{}", doc.render(spec.output));
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Internal(_) => 1,
                _ => EXIT_INPUT,
            };
            ExitCode::from(code as u8)
        }
    }
}
