fn main() {
    std::process::exit(drawdown_kit::run(std::env::args_os()));
}
