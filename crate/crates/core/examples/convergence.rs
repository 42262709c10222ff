use std::path::Path;

use decaylab::lab::{convergence_study, error_ratios, SimConfig};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/flat_linear.cfg");
    let cfg = SimConfig::from_text(&std::fs::read_to_string(path).unwrap()).unwrap();
    let rows = convergence_study(&cfg, &[1024, 2048, 4096], 10.0).unwrap();
    for r in &rows {
        println!("n_cells={:<5} max error {:.4e}  residual {:.4e}", r.n_cells, r.error, r.residual);
    }
    println!("ratios {:?}", error_ratios(&rows));
}
