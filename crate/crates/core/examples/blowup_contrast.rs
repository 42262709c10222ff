use decaylab::lab::{evolve, LabError, SimConfig};

fn main() {
    let path = format!("{}/../../configs/contrast.cfg", env!("CARGO_MANIFEST_DIR"));
    let base = SimConfig::from_text(&std::fs::read_to_string(path).unwrap()).unwrap();
    for nl in ["square_dt", "null_form"] {
        let cfg = base.with_override("nonlinearity", nl).unwrap();
        match evolve(&cfg) {
            Ok(traj) => {
                let k = traj.times.len() - 1;
                let peak = (0..traj.config.grid.n_points()).map(|i| traj.snapshot(k)[i].abs()).fold(0.0, f64::max);
                println!("{nl}: reached t = {}, max |phi| = {peak:.3e}", traj.times[k]);
            }
            Err(LabError::BlowupDetected { time }) => println!("{nl}: blowup at t = {time:.2}"),
            Err(e) => println!("{nl}: {e}"),
        }
    }
}
