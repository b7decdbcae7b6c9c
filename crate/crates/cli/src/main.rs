fn main() {
    std::process::exit(disruptplan_cli::main_with(std::env::args_os()));
}
