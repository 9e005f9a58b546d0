fn main() {
    std::process::exit(kippenhahn::cli::run(std::env::args_os()));
}
