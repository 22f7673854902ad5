fn main() {
    std::process::exit(monocomp::cli::run(std::env::args_os()));
}
