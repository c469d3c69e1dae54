use std::io::Write;

fn main() {
    let out = siegelkit_cli::run(std::env::args_os(), siegelkit_cli::cli::env_precision_cap());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
