fn main() -> std::process::ExitCode {
    cominuscule::cli::main()
}
