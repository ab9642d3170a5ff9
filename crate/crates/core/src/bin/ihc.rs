fn main() {
    std::process::exit(ihom::cli::run_cli(std::env::args_os()));
}
