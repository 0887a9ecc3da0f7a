fn main() {
    std::process::exit(zml::cli::run(std::env::args_os()));
}
