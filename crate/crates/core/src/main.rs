fn main() -> std::process::ExitCode {
    pure_explore::experiment::cli::main()
}
