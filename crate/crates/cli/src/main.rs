fn main() -> std::process::ExitCode {
    lucky_cli::run(std::env::args_os())
}
