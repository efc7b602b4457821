use clap::Parser;
use topowalk_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = topowalk_cli::run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
