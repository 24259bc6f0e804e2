fn main() {
    std::process::exit(mvlab::cli::run());
}
