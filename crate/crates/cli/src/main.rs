fn main() {
    std::process::exit(sdwitness::run(std::env::args_os()));
}
