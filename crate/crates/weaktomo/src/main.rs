fn main() {
    let code = weaktomo::cli::run(std::env::args().skip(1));
    std::process::exit(code);
}
