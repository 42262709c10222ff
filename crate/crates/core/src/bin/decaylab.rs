fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, manifest) = decaylab::cli::dispatch(&argv);
    if let Some(e) = &manifest.error {
        eprintln!("{e}");
    }
    std::process::exit(code);
}
