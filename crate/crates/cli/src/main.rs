fn main() {
    std::process::exit(chaoskit_cli::run(std::env::args_os()));
}
