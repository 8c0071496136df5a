fn main() {
    std::process::exit(equicones_cli::run(std::env::args_os()));
}
