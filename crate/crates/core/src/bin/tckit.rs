fn main() {
    std::process::exit(tckit::cli::main());
}
