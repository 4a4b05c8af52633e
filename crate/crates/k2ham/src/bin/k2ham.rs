fn main() {
    std::process::exit(k2ham::cli::run(std::env::args_os()));
}
