use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = cmspace_cli::main_with_args(std::env::args_os());
    let written = if out.stderr {
        std::io::stderr().write_all(out.output.as_bytes())
    } else {
        std::io::stdout().write_all(out.output.as_bytes())
    };
    match written {
        Ok(()) => ExitCode::from(out.code as u8),
        Err(_) => ExitCode::from(cmspace_cli::EXIT_USAGE as u8),
    }
}
