fn main() {
    std::process::exit(tlpss::cli::main());
}
