fn main() {
    std::process::exit(cantor_spectral::harness::main_with_args(std::env::args_os()));
}
