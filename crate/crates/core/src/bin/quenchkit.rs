fn main() -> std::process::ExitCode {
    quenchkit::cli::run(std::env::args_os())
}
