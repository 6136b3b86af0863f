fn main() {
    std::process::exit(icf_scatter::cli::main());
}
