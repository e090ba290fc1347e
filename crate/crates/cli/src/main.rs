fn main() {
    std::process::exit(loom_cli::run(std::env::args_os()));
}
