fn main() {
    std::process::exit(wlab::run(std::env::args_os()));
}
