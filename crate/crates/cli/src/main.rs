use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    match augdes_cli::run(&argv, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("augdes: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
