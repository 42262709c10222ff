//! Null-form run with slowly decaying data; fits `u` and `v` decay of the
//! pointwise supremum on dyadic blocks. Pass a config path to override.

use decaylab::lab::{evolve, SimConfig};
use decaylab::norms::decay_fits;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| format!("{}/../../configs/nullform.cfg", env!("CARGO_MANIFEST_DIR")));
    let cfg = SimConfig::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let traj = evolve(&cfg).unwrap();
    for f in decay_fits(&traj).unwrap() {
        println!("{}: slope {:.3} (rms log residual {:.3})", f.name, f.fit.slope, f.fit.residual);
        for (s, v) in &f.samples {
            println!("    {s:>6} {v:.4e}");
        }
    }
}
