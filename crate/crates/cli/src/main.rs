use std::io::{stderr, stdout};

fn main() {
    let code = equihom_cli::main_with(std::env::args_os(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
