fn main() {
    std::process::exit(wps_cli::main_with(std::env::args()));
}
