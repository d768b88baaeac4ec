fn main() {
    std::process::exit(adq::cli::run(std::env::args_os()));
}
