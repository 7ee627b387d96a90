use std::path::PathBuf;
use std::process::ExitCode;

fn main() -> ExitCode {
    let default_out = std::env::var_os("NCLAB_OUT").map(PathBuf::from);
    let outcome = nclab_cli::cli::run(std::env::args_os(), default_out);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code.clamp(0, 255) as u8)
}
