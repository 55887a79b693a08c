use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    ExitCode::from(qvlbi_cli::run(std::env::args_os().collect(), &mut stdout))
}
