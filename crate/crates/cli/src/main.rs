fn main() {
    std::process::exit(rbaudit_cli::run(std::env::args_os()));
}
