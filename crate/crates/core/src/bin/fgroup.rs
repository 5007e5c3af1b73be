fn main() {
    std::process::exit(uniconj::cli::run_from_env());
}
