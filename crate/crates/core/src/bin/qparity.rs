fn main() {
    std::process::exit(quiver_parity::cli::main_with_args(std::env::args_os()));
}
