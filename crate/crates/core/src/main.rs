use clap::Parser;

use camcoh::cli::{run, Cli, CliConfig};

fn main() {
    let config: CliConfig = Cli::parse().into();
    let code = run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
