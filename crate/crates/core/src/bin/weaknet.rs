use std::io::Write;

// Deep nets make parsing and printing recurse deeply.
const STACK_SIZE: usize = 512 * 1024 * 1024;

fn main() {
    let code = std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(|| {
            let stdout = std::io::stdout();
            let stderr = std::io::stderr();
            let mut out = stdout.lock();
            let mut err = stderr.lock();
            let code = weaknet::cli::run_cli(std::env::args_os(), &mut out, &mut err);
            let _ = out.flush();
            code
        })
        .expect("spawn main thread")
        .join()
        .unwrap_or(101);
    std::process::exit(code);
}
