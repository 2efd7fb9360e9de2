fn main() {
    std::process::exit(wittcalc_cli::main_with_args(std::env::args_os()));
}
