use std::process::ExitCode;

use clap::Parser;
use stable_index_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    // the flag is the only override; RAYON_NUM_THREADS alone is ignored
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(2);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
