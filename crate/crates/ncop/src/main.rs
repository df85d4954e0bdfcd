use clap::Parser;

fn main() {
    let cli = ncop::cli::Cli::parse();
    std::process::exit(ncop::run(&cli));
}
