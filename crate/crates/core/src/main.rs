fn main() {
    std::process::exit(entropy1d::cli::main_with_args(std::env::args_os()));
}
