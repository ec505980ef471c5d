use std::process::ExitCode;

fn main() -> ExitCode {
    nullmove::cli::main_with_args(std::env::args_os())
}
