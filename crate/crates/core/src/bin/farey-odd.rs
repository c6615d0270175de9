fn main() {
    std::process::exit(farey_odd::cli::main_with_args(std::env::args_os()));
}
