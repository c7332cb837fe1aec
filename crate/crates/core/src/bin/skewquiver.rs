use clap::Parser;
use skewquiver::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            std::process::exit(out.exit_code);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
