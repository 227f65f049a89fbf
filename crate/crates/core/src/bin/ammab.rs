fn main() {
    std::process::exit(ammab::harness::cli(std::env::args_os()));
}
