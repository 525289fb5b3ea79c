fn main() {
    std::process::exit(ramanujan_audit::cli::main_with_args(std::env::args_os()));
}
