fn main() {
    std::process::exit(chevkit::cli::main_with_args(std::env::args()));
}
