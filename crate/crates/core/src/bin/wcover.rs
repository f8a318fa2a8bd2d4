fn main() {
    std::process::exit(wcover::cli::run(std::env::args_os()));
}
