fn main() {
    std::process::exit(modsurf::cli::main_with_args(std::env::args_os()));
}
