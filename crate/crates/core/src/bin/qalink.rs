fn main() {
    std::process::exit(qalink::cli::run_main());
}
