fn main() {
    std::process::exit(identent_cli::run(std::env::args_os()));
}
