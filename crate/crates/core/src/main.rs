fn main() {
    std::process::exit(conelyap::cli::run());
}
