fn main() {
    std::process::exit(subaction::cli::run(std::env::args_os()));
}
