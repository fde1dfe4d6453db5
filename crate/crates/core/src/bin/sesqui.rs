fn main() {
    std::process::exit(sesqui::cli::run(std::env::args_os()));
}
