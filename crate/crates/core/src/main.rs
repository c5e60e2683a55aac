fn main() {
    std::process::exit(symsphere::cli::run(std::env::args_os()));
}
