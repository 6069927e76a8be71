use clap::Parser;

fn main() {
    let cli = septic_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match septic_cli::run(cli, &mut stdout) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(septic_cli::exit::FAILED);
        }
    }
}
