use std::process::exit;

fn main() {
    exit(coalgraph_cli::run(std::env::args_os()));
}
