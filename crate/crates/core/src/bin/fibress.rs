use clap::Parser;

fn main() {
    std::process::exit(fibress::cli::execute(fibress::cli::Cli::parse()));
}
