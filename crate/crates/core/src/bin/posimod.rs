fn main() {
    std::process::exit(posimod::cli::main());
}
