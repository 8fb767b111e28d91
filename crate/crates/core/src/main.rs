fn main() {
    std::process::exit(hopfcalc::cli::run(std::env::args_os()));
}
