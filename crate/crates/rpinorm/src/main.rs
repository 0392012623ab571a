fn main() {
    std::process::exit(rpinorm::cli::run(std::env::args_os()));
}
