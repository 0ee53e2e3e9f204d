fn main() {
    std::process::exit(qzero::cli::main_with(std::env::args_os()));
}
