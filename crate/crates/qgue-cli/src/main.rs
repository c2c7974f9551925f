use clap::Parser;

fn main() {
    let cli = match qgue_cli::Cli::try_parse() {
        Ok(cli) => cli,
        // clap prints usage errors itself and exits 2 (0 for --help)
        Err(e) => e.exit(),
    };
    match qgue_cli::run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
