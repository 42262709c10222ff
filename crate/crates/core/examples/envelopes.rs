use decaylab::lab::{evolve, SimConfig};
use decaylab::norms::{energy_history, envelope_profile};

fn load(name: &str) -> SimConfig {
    let path = format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"));
    SimConfig::from_text(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn main() {
    let cfg = load("nullform.cfg");
    let traj = evolve(&cfg).unwrap();
    println!("sup |phi| <v> <u>^-p / eps over each cone cover");
    for p in [0.5, 1.0] {
        let row: Vec<String> = envelope_profile(&traj, p, cfg.data.eps).unwrap().iter().map(|(t, c)| format!("T={t}: {c:.3}")).collect();
        println!("  p={p}: {}", row.join("  "));
    }

    let cfg = load("energy.cfg");
    for nl in ["null_form", "none"] {
        let traj = evolve(&cfg.with_override("nonlinearity", nl).unwrap()).unwrap();
        let e = energy_history(&traj, 0).unwrap();
        let e0 = e[0].1;
        let peak = e.iter().map(|x| x.1).fold(0.0, f64::max);
        println!("{nl:>9}: E0(0) = {e0:.4e}, sup E0 / E0(0) = {:.3}", peak / e0);
    }
}
