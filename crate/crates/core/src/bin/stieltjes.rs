fn main() {
    std::process::exit(stieltjes::cli::run(std::env::args_os()));
}
