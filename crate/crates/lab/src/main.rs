fn main() {
    std::process::exit(nmroute_lab::cli::main());
}
