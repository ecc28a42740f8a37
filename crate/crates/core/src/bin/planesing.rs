fn main() {
    std::process::exit(planesing::cli::run(std::env::args_os()));
}
