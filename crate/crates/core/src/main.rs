use std::io;

fn main() {
    let code = cacsat::frontend::cli::cli_main(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
