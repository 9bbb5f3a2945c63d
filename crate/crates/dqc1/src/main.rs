fn main() {
    std::process::exit(dqc1::cli::main_with(std::env::args_os()));
}
