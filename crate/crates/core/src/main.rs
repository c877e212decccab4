fn main() {
    std::process::exit(dualpair::labcli::run(std::env::args_os()));
}
