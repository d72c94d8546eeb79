use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let r = ratdecomp::cli::run(std::env::args_os(), &mut stdin.lock());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(r.code);
}
