//! Trajectory container.
//!
//! ```text
//! DECAYLAB-TRAJ 1\n
//! endian=little\n
//! grid r_max=<f64> n_cells=<usize> dt=<f64>\n
//! snapshots=<K> points=<N>\n
//! config_bytes=<L>\n
//! <L bytes of canonical config text>
//! K blocks of 1 + 3N little-endian f64: t, φ[0..N], ∂_tφ[0..N], ∂_t²φ[0..N]
//! ```
//!
//! The index file has a `# k time byte_offset` header and one line per
//! snapshot.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::solver::{SimConfig, Trajectory};
use super::field::FieldSource;
use super::LabError;

const MAGIC: &str = "DECAYLAB-TRAJ 1";

fn fmt_err(msg: impl Into<String>) -> LabError {
    LabError::Format(msg.into())
}

pub fn index_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".idx");
    PathBuf::from(s)
}

fn header(traj: &Trajectory) -> (String, String) {
    let g = traj.config.grid;
    let cfg = traj.config.to_text();
    let head = format!(
        "{MAGIC}\nendian=little\ngrid r_max={:?} n_cells={} dt={:?}\nsnapshots={} points={}\nconfig_bytes={}\n",
        g.r_max,
        g.n_cells,
        g.dt,
        traj.n_times(),
        traj.n_points(),
        cfg.len()
    );
    (head, cfg)
}

/// Writes the container and its index next to it (`<path>.idx`).
pub fn write_trajectory(traj: &Trajectory, path: &Path) -> Result<(), LabError> {
    let (head, cfg) = header(traj);
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(head.as_bytes())?;
    w.write_all(cfg.as_bytes())?;
    let base = head.len() + cfg.len();
    let block = 8 * (1 + 3 * traj.n_points());
    let mut idx = String::from("# k time byte_offset\n");
    for k in 0..traj.n_times() {
        idx.push_str(&format!("{k} {:?} {}\n", traj.times[k], base + k * block));
        w.write_all(&traj.times[k].to_le_bytes())?;
        for part in [traj.snapshot(k), traj.snapshot_t(k), traj.snapshot_tt(k)] {
            for x in part {
                w.write_all(&x.to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    fs::write(index_path(path), idx)?;
    Ok(())
}

fn read_line(r: &mut impl BufRead) -> Result<String, LabError> {
    let mut s = String::new();
    r.read_line(&mut s)?;
    if !s.ends_with('\n') {
        return Err(fmt_err("truncated header"));
    }
    s.pop();
    Ok(s)
}

fn field<'a>(line: &'a str, key: &str) -> Result<&'a str, LabError> {
    line.split_whitespace()
        .find_map(|f| f.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .ok_or_else(|| fmt_err(format!("missing {key} in {line:?}")))
}

fn parse<T: std::str::FromStr>(line: &str, key: &str) -> Result<T, LabError> {
    let v = field(line, key)?;
    v.parse().map_err(|_| fmt_err(format!("bad {key}: {v:?}")))
}

pub fn read_trajectory(path: &Path) -> Result<Trajectory, LabError> {
    let mut r = BufReader::new(fs::File::open(path)?);
    if read_line(&mut r)? != MAGIC {
        return Err(fmt_err("not a trajectory file"));
    }
    if read_line(&mut r)? != "endian=little" {
        return Err(fmt_err("unsupported byte order"));
    }
    let grid = read_line(&mut r)?;
    let sizes = read_line(&mut r)?;
    let cfg_line = read_line(&mut r)?;
    let k: usize = parse(&sizes, "snapshots")?;
    let n: usize = parse(&sizes, "points")?;
    let len: usize = parse(&cfg_line, "config_bytes")?;
    let mut text = vec![0u8; len];
    r.read_exact(&mut text)?;
    let text = String::from_utf8(text).map_err(|_| fmt_err("config is not utf-8"))?;
    let config = SimConfig::from_text(&text)?;
    if config.grid.n_points() != n
        || parse::<usize>(&grid, "n_cells")? != config.grid.n_cells
        || parse::<f64>(&grid, "dt")? != config.grid.dt
    {
        return Err(fmt_err("grid descriptor disagrees with config"));
    }
    let mut buf = vec![0u8; 8 * (1 + 3 * n)];
    let mut times = Vec::with_capacity(k);
    let (mut phi, mut phi_t, mut phi_tt) =
        (Vec::with_capacity(k * n), Vec::with_capacity(k * n), Vec::with_capacity(k * n));
    for _ in 0..k {
        r.read_exact(&mut buf).map_err(|_| fmt_err("truncated snapshot block"))?;
        let vals: Vec<f64> = buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        times.push(vals[0]);
        phi.extend_from_slice(&vals[1..1 + n]);
        phi_t.extend_from_slice(&vals[1 + n..1 + 2 * n]);
        phi_tt.extend_from_slice(&vals[1 + 2 * n..]);
    }
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(fmt_err("trailing bytes"));
    }
    Ok(Trajectory::from_parts(config, times, phi, phi_t, phi_tt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::evolve;

    #[test]
    fn write_read_round_trip() {
        let cfg = SimConfig::from_text("r_max = 12\nn_cells = 64\nt_final = 4\nrecord_stride = 4\neps = 0.02").unwrap();
        let traj = evolve(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.traj");
        write_trajectory(&traj, &p).unwrap();
        let back = read_trajectory(&p).unwrap();
        assert_eq!(back.config, traj.config);
        assert_eq!(back.times, traj.times);
        assert_eq!(back.snapshot(3), traj.snapshot(3));
        assert_eq!(back.snapshot_tt(2), traj.snapshot_tt(2));
        let idx = fs::read_to_string(index_path(&p)).unwrap();
        assert_eq!(idx.lines().count(), traj.n_times() + 1);

        let p2 = dir.path().join("again.traj");
        write_trajectory(&evolve(&cfg).unwrap(), &p2).unwrap();
        assert_eq!(fs::read(&p).unwrap(), fs::read(&p2).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.traj");
        fs::write(&p, "hello\n").unwrap();
        assert!(matches!(read_trajectory(&p), Err(LabError::Format(_))));
    }
}
