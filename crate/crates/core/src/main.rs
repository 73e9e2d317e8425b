fn main() {
    std::process::exit(parafact::cli::main());
}
