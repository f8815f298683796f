use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(clumsy_cli::run(std::env::args()) as u8)
}
