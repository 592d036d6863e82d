fn main() {
    std::process::exit(wqed_cli::main_with_args(std::env::args_os()));
}
