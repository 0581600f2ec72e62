fn main() {
    std::process::exit(decalg::cli::run(std::env::args_os()));
}
