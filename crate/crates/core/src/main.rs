use fde_spectral::cli;

fn main() {
    env_logger::init();
    let config = match cli::parse_config(std::env::args_os()) {
        Ok(config) => config,
        // clap assigns exit status 2 to usage errors and 0 to --help/--version
        Err(err) => err.exit(),
    };
    match cli::run(&config) {
        Ok(status) => std::process::exit(status),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
