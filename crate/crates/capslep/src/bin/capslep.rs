fn main() {
    std::process::exit(capslep::cli::run(std::env::args_os()));
}
