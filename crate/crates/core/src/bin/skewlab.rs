use clap::Parser;

fn main() {
    let cli = skewlab::cli::Cli::parse();
    std::process::exit(skewlab::cli::run(cli));
}
