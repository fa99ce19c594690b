use std::io;

fn main() {
    let code = oodn_kb::run_cli(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code);
}
