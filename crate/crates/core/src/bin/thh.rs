fn main() {
    std::process::exit(thh_core::cli::main_with_args(std::env::args_os()));
}
