fn main() {
    std::process::exit(subeq::cli::run(std::env::args_os()));
}
