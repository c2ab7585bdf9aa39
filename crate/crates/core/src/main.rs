use std::process::ExitCode;

fn main() -> ExitCode {
    vnkit::cli::main_with_args(std::env::args_os())
}
