fn main() {
    std::process::exit(differint::cli::run(std::env::args_os()));
}
