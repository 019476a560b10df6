fn main() {
    std::process::exit(triproj::cli::run(std::env::args_os()));
}
