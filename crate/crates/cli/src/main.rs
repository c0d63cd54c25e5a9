fn main() {
    std::process::exit(hecke_lab_cli::run(std::env::args_os()));
}
