fn main() {
    std::process::exit(secroute::cli::main(std::env::args_os()));
}
