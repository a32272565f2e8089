//! Producing sweep data through the library instead of the binary.

use clap::Parser;
use eccentric_casimir::cli::{figure_sweep, Cli, Command, Config};
use eccentric_casimir::energy::NumericsPolicy;

fn main() -> eccentric_casimir::Result<()> {
    let cli = Cli::parse_from([
        "casimir", "figure", "4", "--alphas", "1.5,2", "--points", "5",
    ]);
    let Command::Figure(args) = cli.command else {
        unreachable!()
    };
    let sweep = figure_sweep(&args, &Config::default(), &NumericsPolicy::default())?;
    print!("{}", sweep.to_csv());
    eprintln!("{}", sweep.metadata_line());
    Ok(())
}
