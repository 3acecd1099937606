fn main() {
    std::process::exit(odd_unimodal::cli::main_entry());
}
