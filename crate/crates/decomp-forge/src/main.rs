use clap::Parser;

use decomp_forge::cli::{self, Cli, EXIT_USAGE};

fn main() {
    let args = Cli::parse();
    let output = args.output_path().cloned();
    let (code, report) = cli::run(&args);
    if code == EXIT_USAGE {
        eprint!("{report}");
    } else {
        match output {
            Some(path) => {
                if let Err(e) = std::fs::write(&path, &report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(EXIT_USAGE);
                }
            }
            None => print!("{report}"),
        }
    }
    std::process::exit(code);
}
