fn main() {
    std::process::exit(polybell::cli::run());
}
