fn main() {
    std::process::exit(monosob::cli::run());
}
