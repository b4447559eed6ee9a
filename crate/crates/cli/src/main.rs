use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = hyperbol_cli::run(std::env::args());
    let text = env.rendered();
    let written = match &env.output_file {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("writing {path}: {e}")),
        None if env.exit_code == 2 => std::io::stderr().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(1);
    }
    ExitCode::from(env.exit_code as u8)
}
