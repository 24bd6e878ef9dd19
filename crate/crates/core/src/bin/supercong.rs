use std::process::ExitCode;

use supercong_core::cli;

fn main() -> ExitCode {
    let code = match cli::parse_args(std::env::args_os()) {
        Ok(config) => cli::execute(&config),
        Err(e) => {
            e.print();
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
