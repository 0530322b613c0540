use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    // library panics are caught and reported; keep stderr clean
    std::panic::set_hook(Box::new(|_| {}));
    let (code, out, err) = tdual_cli::main_with_args(std::env::args_os().skip(1));
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
