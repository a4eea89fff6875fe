fn main() {
    std::process::exit(grouplet::cli::main_with_args(std::env::args_os()));
}
