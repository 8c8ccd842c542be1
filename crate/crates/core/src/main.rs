use std::io::IsTerminal;

fn main() {
    let stdout = std::io::stdout();
    let terminal = stdout.is_terminal();
    let code = trinomial_fano::cli::run_args(
        std::env::args_os(),
        terminal,
        &mut stdout.lock(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
