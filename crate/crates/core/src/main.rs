use clap::Parser;

fn main() {
    let cli = critexp::cli::Cli::parse();
    std::process::exit(critexp::cli::main_with(&cli));
}
