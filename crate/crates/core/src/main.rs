fn main() {
    std::process::exit(minorcsp::cli::run(std::env::args_os()));
}
