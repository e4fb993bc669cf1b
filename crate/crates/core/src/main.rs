use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lorenz_core::cli::main_with_args(std::env::args_os()))
}
