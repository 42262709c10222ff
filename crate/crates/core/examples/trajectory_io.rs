//! Store a trajectory, read it back, and evaluate vector-field words on a
//! recorded snapshot.

use decaylab::lab::{apply_vector_field, evolve, parse_word, read_trajectory, write_trajectory, FieldSource, SimConfig};

fn main() {
    let cfg = SimConfig::from_text("r_max = 60\nn_cells = 1200\nt_final = 32\nrecord_stride = 16\nphi0 = gaussian:2").unwrap();
    let traj = evolve(&cfg).unwrap();
    let dir = std::env::temp_dir().join("decaylab-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gaussian.traj");
    write_trajectory(&traj, &path).unwrap();
    let back = read_trajectory(&path).unwrap();
    println!("{} snapshots, {} points, stored at {}", back.n_times(), back.n_points(), path.display());

    let k = back.snapshot_near(24.0);
    let i = (20.0 / back.dr()) as usize;
    for w in ["id", "dt", "dr", "S", "S.S", "dt.S"] {
        let slice = apply_vector_field(&back, &parse_word(w).unwrap(), k).unwrap();
        println!("t = {:>5}  r = {:>4}  {w:<5} {:+.5e}", slice.time, back.r(i), slice.values[i]);
    }
}
