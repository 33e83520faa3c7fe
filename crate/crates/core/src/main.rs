use clap::Parser;

mod cli;

fn main() {
    std::process::exit(cli::run(cli::Cli::parse()));
}
