fn main() {
    std::process::exit(tdcommit::expcli::cli::run(std::env::args_os()));
}
