use clap::Parser;

fn main() {
    let cli = lapshift::cli::Cli::parse();
    std::process::exit(lapshift::cli::run(cli));
}
