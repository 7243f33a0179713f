fn main() {
    std::process::exit(dotqubit_cli::run(std::env::args_os()));
}
