fn main() {
    std::process::exit(hardy_sums::cli::run(std::env::args_os()));
}
