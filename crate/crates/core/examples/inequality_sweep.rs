//! Scale sweeps of the functional inequalities on a solved null-form field.
//! The subject needs `dr = 0.05`, so this takes a few seconds.

use decaylab::checks::{run_sweep, scale_spread, CheckKind, Subject};
use decaylab::lab::{evolve, SimConfig};

fn main() {
    let path = format!("{}/../../configs/checks.cfg", env!("CARGO_MANIFEST_DIR"));
    let cfg = SimConfig::from_text(&std::fs::read_to_string(path).unwrap()).unwrap();
    let traj = evolve(&cfg).unwrap();
    let subject = Subject::solved(&traj, &cfg);
    for kind in CheckKind::ALL {
        match run_sweep(kind, &subject) {
            Ok(reps) => {
                let ratios: Vec<String> = reps.iter().map(|r| format!("{:.3}", r.ratio)).collect();
                println!("{kind:<20} spread {:.3}  [{}]", scale_spread(&reps), ratios.join(" "));
            }
            Err(e) => println!("{kind:<20} {e}"),
        }
    }
}
