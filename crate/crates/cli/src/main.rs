use clap::Parser;
use ttd_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("ttd: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
