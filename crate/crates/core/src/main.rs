fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(ymp_core::cli::run(&argv));
}
