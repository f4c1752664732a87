fn main() {
    std::process::exit(foursq::cli::main_from_env());
}
