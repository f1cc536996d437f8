fn main() {
    std::process::exit(grack::cli::run_from_args(std::env::args_os()));
}
