fn main() {
    std::process::exit(wedgebench::cli::run(std::env::args_os()));
}
