fn main() {
    std::process::exit(eccentric_casimir::cli::main());
}
