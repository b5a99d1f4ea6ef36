fn main() {
    subshift::cli::main_entry()
}
