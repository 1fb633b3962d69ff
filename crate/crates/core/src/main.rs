use clap::Parser;
use zernike_higgs::cli;

fn main() {
    let args = cli::Cli::parse();
    let code = match cli::run(&args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", cli::error_json(&err));
            err.exit_code()
        }
    };
    std::process::exit(code);
}
