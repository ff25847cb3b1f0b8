fn main() {
    std::process::exit(oreach::run(std::env::args_os()));
}
