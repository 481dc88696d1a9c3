fn main() {
    std::process::exit(z5lab::cli::run(std::env::args_os()));
}
