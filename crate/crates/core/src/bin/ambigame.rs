fn main() {
    std::process::exit(ambigame::cli::main_with_args(std::env::args_os()));
}
