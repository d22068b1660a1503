fn main() {
    std::process::exit(geokgon::cli::run(std::env::args_os()));
}
