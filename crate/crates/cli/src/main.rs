use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(msg) = eqschub_cli::configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let out = eqschub_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code)
}
