use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out = relkit::cli::run_command(&argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
