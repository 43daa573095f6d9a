fn main() {
    let code = infobdd::cli::main_with_args(std::env::args_os());
    std::process::exit(code);
}
