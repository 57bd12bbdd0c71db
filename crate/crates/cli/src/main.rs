use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = horadam_cli::run(std::env::args().skip(1));
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(outcome.code as u8)
}
