fn main() {
    std::process::exit(thrifty::cli::run(std::env::args_os()));
}
