fn main() {
    std::process::exit(deltafock::cli::run(std::env::args_os()));
}
