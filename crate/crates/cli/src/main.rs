fn main() {
    std::process::exit(heron_cli::main_entry());
}
