fn main() {
    std::process::exit(codim_lab::cli::main_with_args(std::env::args_os()));
}
