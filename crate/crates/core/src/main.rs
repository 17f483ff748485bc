fn main() {
    std::process::exit(crchern::cli::main());
}
