use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cdc_solver::cli::run())
}
