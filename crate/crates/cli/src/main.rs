fn main() {
    let code = topodist_cli::main_with(std::env::args(), &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
