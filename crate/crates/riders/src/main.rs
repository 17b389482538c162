fn main() {
    std::process::exit(riders::cli::run(std::env::args_os()));
}
