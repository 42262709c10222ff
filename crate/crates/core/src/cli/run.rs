use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::{config_hash, Cli, Command, Failure, Region, RunManifest, Suite, EXIT_BLOWUP, EXIT_FAILURE};
use crate::calculus::trace_io::TraceFile;
use crate::calculus::{run_exterior_iteration, run_interior_iteration, EngineConfig, Rational};
use crate::checks::{run_sweep, scale_spread, CheckKind, CheckReport, Subject};
use crate::lab::config::parse_rational;
use crate::lab::persist::index_path;
use crate::lab::{evolve, read_trajectory, write_trajectory, SimConfig};
use crate::norms::report::{fit_file, to_csv, EnergyTrack, Summary, CSV_HEADER};
use crate::norms::{decay_fits, energy_history, envelope_profile, norm_table};

pub(super) fn execute(cli: &Cli, m: &mut RunManifest) -> Result<(), Failure> {
    let out = cli.out.as_path();
    match &cli.command {
        Command::Iterate { sigma, region } => iterate(out, sigma, *region, m),
        Command::Simulate { config } => {
            let cfg = load_config(config)?;
            simulate(out, &cfg, m)
        }
        Command::Measure { traj, suite } => measure(out, traj, *suite, m),
        Command::Check { traj, kinds } => check(out, traj, kinds, m),
        Command::Sweep { config, vary, jobs } => sweep(out, config, vary, *jobs, m),
    }
}

fn load_config(path: &Path) -> Result<SimConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    Ok(SimConfig::from_text(&text)?)
}

fn iterate(out: &Path, sigma: &str, region: Region, m: &mut RunManifest) -> Result<(), Failure> {
    let s: Rational = parse_rational(sigma).map_err(|e| Failure::Usage(e.to_string()))?;
    if s <= Rational::from_integer(0) || s >= Rational::from_integer(1) {
        return Err(Failure::Usage(format!("sigma = {sigma} must lie in (0, 1)")));
    }
    let cfg = EngineConfig::new(s);
    let name = format!("{region:?}").to_lowercase();
    m.config_hash = Some(config_hash(&format!("sigma = {}\nregion = {name}\n", crate::calculus::exponent::format_rational(s))));
    let ext = m.timed("exterior", || run_exterior_iteration(&cfg))?;
    if region != Region::Interior {
        m.write(out, "trace_exterior.txt", &TraceFile::from_trace(&ext).to_text())?;
    }
    if region != Region::Exterior {
        let int = m.timed("interior", || run_interior_iteration(&cfg, &ext))?;
        m.write(out, "trace_interior.txt", &TraceFile::from_trace(&int).to_text())?;
    }
    Ok(())
}

fn simulate(out: &Path, cfg: &SimConfig, m: &mut RunManifest) -> Result<(), Failure> {
    let text = cfg.to_text();
    m.config_hash = Some(config_hash(&text));
    m.write(out, "config.cfg", &text)?;
    let traj = m.timed("evolve", || evolve(cfg))?;
    let path = out.join("trajectory.bin");
    m.timed("write", || write_trajectory(&traj, &path))?;
    m.outputs.push(path.clone());
    m.outputs.push(index_path(&path));
    Ok(())
}

fn measure(out: &Path, traj: &Path, suite: Suite, m: &mut RunManifest) -> Result<(), Failure> {
    let field = m.timed("read", || read_trajectory(traj))?;
    m.config_hash = Some(config_hash(&field.config.to_text()));
    let mut summary = Summary::default();
    match suite {
        Suite::Norms => {
            summary.reports = m.timed("norms", || norm_table(&field))?;
            m.write(out, "norms.csv", &to_csv(&summary.reports))?;
        }
        Suite::Envelopes => {
            let eps = field.config.data.eps.abs().max(f64::MIN_POSITIVE);
            let mut csv = String::from("T,u_power,value\n");
            for p in [0.5, 1.0] {
                for (t, c) in m.timed("envelopes", || envelope_profile(&field, p, eps))? {
                    let _ = writeln!(csv, "{t:?},{p:?},{c:?}");
                }
            }
            m.write(out, "envelopes.csv", &csv)?;
            let history = m.timed("energy", || energy_history(&field, 0))?;
            let mut e = String::from("t,E0\n");
            for (t, v) in &history {
                let _ = writeln!(e, "{t:?},{v:?}");
            }
            m.write(out, "energy.csv", &e)?;
            summary.energy.push(EnergyTrack { order: 0, history });
        }
        Suite::Fit => {
            summary.fits = m.timed("fit", || decay_fits(&field))?;
            for f in &summary.fits {
                m.write(out, &format!("{}.fit", f.name), &fit_file(f))?;
            }
        }
    }
    m.write(out, "summary.json", &summary.to_json())?;
    Ok(())
}

fn parse_kinds(names: &[String]) -> Result<Vec<CheckKind>, Failure> {
    if names.iter().any(|n| n == "all") {
        return Ok(CheckKind::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| CheckKind::parse(n).ok_or_else(|| Failure::Usage(format!("unknown check kind {n:?}"))))
        .collect()
}

#[derive(serde::Serialize)]
struct SweepResult {
    kind: CheckKind,
    spread: Option<f64>,
    error: Option<String>,
    reports: Vec<CheckReport>,
}

fn check(out: &Path, traj: &Path, names: &[String], m: &mut RunManifest) -> Result<(), Failure> {
    let kinds = parse_kinds(names)?;
    let field = m.timed("read", || read_trajectory(traj))?;
    m.config_hash = Some(config_hash(&field.config.to_text()));
    let subject = &Subject::solved(&field, &field.config);
    let results: Vec<SweepResult> = m.timed("checks", || {
        std::thread::scope(|s| {
            let handles: Vec<_> = kinds.iter().map(|&k| s.spawn(move || (k, run_sweep(k, subject)))).collect();
            handles
                .into_iter()
                .map(|h| match h.join().expect("check thread panicked") {
                    (kind, Ok(reports)) => SweepResult { kind, spread: Some(scale_spread(&reports)), error: None, reports },
                    (kind, Err(e)) => SweepResult { kind, spread: None, error: Some(e.to_string()), reports: vec![] },
                })
                .collect()
        })
    });
    let mut csv = format!("{CSV_HEADER}\n");
    for r in results.iter().flat_map(|r| &r.reports) {
        csv.push_str(&r.csv_rows());
    }
    m.write(out, "checks.csv", &csv)?;
    m.write(out, "checks.json", &serde_json::to_string_pretty(&results).expect("serializes"))?;
    let failed: Vec<String> = results.iter().filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.kind))).collect();
    if failed.is_empty() { Ok(()) } else { Err(Failure::Other(failed.join("; "))) }
}

fn sweep(out: &Path, config: &Path, vary: &str, jobs: Option<usize>, m: &mut RunManifest) -> Result<(), Failure> {
    let base = load_config(config)?;
    m.config_hash = Some(config_hash(&base.to_text()));
    let (key, values) = vary.split_once('=').ok_or_else(|| Failure::Usage(format!("--vary expects key=v1,v2: {vary:?}")))?;
    let members: Vec<(String, SimConfig)> = values
        .split(',')
        .map(|v| Ok((format!("{}-{}", key.trim(), v.trim().replace('/', "_")), base.with_override(key, v.trim())?)))
        .collect::<Result<_, Failure>>()?;
    let workers = jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, members.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<RunManifest>>> = members.iter().map(|_| Mutex::new(None)).collect();
    m.timed("sweep", || {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let j = next.fetch_add(1, Ordering::Relaxed);
                    let Some((name, cfg)) = members.get(j) else { break };
                    *slots[j].lock().unwrap() = Some(sweep_member(&out.join(name), cfg));
                });
            }
        })
    });
    m.children = slots.into_iter().map(|s| s.into_inner().unwrap().expect("member ran")).collect();
    for ((name, _), c) in members.iter().zip(&m.children) {
        m.outputs.extend(c.outputs.iter().cloned());
        m.outputs.push(out.join(name).join("manifest.json"));
    }
    if m.children.iter().any(|c| c.exit_code == EXIT_BLOWUP) {
        m.exit_code = EXIT_BLOWUP;
        m.error = Some("a sweep member blew up".into());
    } else if m.children.iter().any(|c| c.exit_code != 0) {
        m.exit_code = EXIT_FAILURE;
        m.error = Some("a sweep member failed".into());
    }
    Ok(())
}

/// Evolve and fit without storing the trajectory.
fn sweep_member(dir: &Path, cfg: &SimConfig) -> RunManifest {
    let mut m = RunManifest::new(vec!["sweep-member".into(), dir.display().to_string()]);
    let text = cfg.to_text();
    m.config_hash = Some(config_hash(&text));
    let result = (|| -> Result<(), Failure> {
        std::fs::create_dir_all(dir)?;
        m.write(dir, "config.cfg", &text)?;
        let traj = m.timed("evolve", || evolve(cfg))?;
        let fits = m.timed("fit", || decay_fits(&traj))?;
        for f in &fits {
            m.write(dir, &format!("{}.fit", f.name), &fit_file(f))?;
        }
        m.write(dir, "summary.json", &Summary { fits, ..Default::default() }.to_json())?;
        Ok(())
    })();
    if let Err(e) = result {
        if let Failure::Blowup(t) = e {
            m.blowup_time = Some(t);
        }
        m.exit_code = e.exit_code();
        m.error = Some(e.to_string());
    }
    let _ = std::fs::write(dir.join("manifest.json"), m.to_json());
    m
}
