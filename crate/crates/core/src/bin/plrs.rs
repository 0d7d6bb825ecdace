fn main() -> std::process::ExitCode {
    plrs::cli::main()
}
