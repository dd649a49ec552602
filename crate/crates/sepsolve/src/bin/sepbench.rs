fn main() -> std::process::ExitCode {
    sepsolve::cli::main()
}
