fn main() {
    std::process::exit(zeta_moments::cli::run(std::env::args_os()));
}
