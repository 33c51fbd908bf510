fn main() {
    std::process::exit(tokensign::cli::run());
}
