fn main() {
    std::process::exit(lcskpp::cli::run(std::env::args_os()));
}
