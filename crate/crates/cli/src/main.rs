fn main() {
    std::process::exit(glint_cli::run(std::env::args().collect()));
}
