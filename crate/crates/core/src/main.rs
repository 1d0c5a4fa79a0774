fn main() {
    std::process::exit(orlicz_approx::cli::run(std::env::args_os()));
}
