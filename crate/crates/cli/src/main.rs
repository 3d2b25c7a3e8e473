use clap::Parser;
use hgw_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}
