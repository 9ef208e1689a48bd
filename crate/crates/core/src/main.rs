fn main() {
    std::process::exit(sasakian_curves::harness::cli::run(std::env::args_os()));
}
