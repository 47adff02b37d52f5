fn main() {
    std::process::exit(symkit_cli::run(std::env::args_os()));
}
