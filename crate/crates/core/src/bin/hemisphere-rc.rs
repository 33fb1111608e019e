fn main() {
    std::process::exit(hemisphere_rc::cli::run(std::env::args_os()));
}
