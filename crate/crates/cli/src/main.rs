use std::process::ExitCode;

fn main() -> ExitCode {
    let env = emergelab_cli::Env::from_process();
    let code = emergelab_cli::run(
        std::env::args_os(),
        &env,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code)
}
