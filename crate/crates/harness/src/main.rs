fn main() -> std::process::ExitCode {
    fvweno_harness::cli::main_with_args(std::env::args_os())
}
