fn main() {
    std::process::exit(mukai::cli::run(std::env::args_os()));
}
