use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = lamsep_cli::run(std::env::args_os());
    if let Some(payload) = &result.payload {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(payload.as_bytes()).and_then(|_| stdout.flush()).is_err() {
            return ExitCode::from(2);
        }
    }
    if !result.summary.is_empty() {
        eprintln!("{}", result.summary);
    }
    ExitCode::from(result.code as u8)
}
