use std::io;

fn main() {
    let code = screened_susy::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
