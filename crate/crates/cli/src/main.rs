use std::process::ExitCode;

fn main() -> ExitCode {
    let res = zbrng_cli::run(std::env::args());
    if res.code == 2 {
        eprint!("{}", res.report);
    } else {
        print!("{}", res.report);
    }
    ExitCode::from(res.code as u8)
}
