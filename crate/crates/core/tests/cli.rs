use std::path::Path;

use decaylab::cli::{dispatch, EXIT_BLOWUP, EXIT_CONFIG, EXIT_USAGE};
use decaylab::lab::read_trajectory;

fn run(args: &[&str], out: &Path) -> (i32, decaylab::cli::RunManifest) {
    let mut argv: Vec<String> = std::iter::once("decaylab").chain(args.iter().copied()).map(String::from).collect();
    argv.extend(["--out".into(), out.display().to_string()]);
    dispatch(&argv)
}

fn write_cfg(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

/// Coarse, but long enough for three dyadic `U` bands at `T = 256`.
const COARSE: &str = "r_max = 1120\nn_cells = 2240\nt_final = 512\nrecord_stride = 16\nnonlinearity = null_form\neps = 0.01\nphi0 = tail:560:600\n";

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    assert_eq!(run(&["explode"], &out).0, EXIT_USAGE);
    assert_eq!(run(&["iterate"], &out).0, EXIT_USAGE);
    assert_eq!(run(&["iterate", "--sigma", "3/2"], &out).0, EXIT_USAGE);
    assert_eq!(run(&["check", "--traj", "x", "--kinds", "bogus"], &out).0, EXIT_USAGE);

    let missing = tmp.path().join("none.cfg").display().to_string();
    assert_eq!(run(&["simulate", "--config", &missing], &out).0, EXIT_CONFIG);
    let bad = write_cfg(tmp.path(), "bad.cfg", "r_max = 10\nwobble = 1\n");
    assert_eq!(run(&["simulate", "--config", &bad], &out).0, EXIT_CONFIG);
    let cfl = write_cfg(tmp.path(), "cfl.cfg", "cfl = 0.9\n");
    assert_eq!(run(&["simulate", "--config", &cfl], &out).0, EXIT_CONFIG);

    let blow = write_cfg(
        tmp.path(),
        "blow.cfg",
        "r_max = 80\nn_cells = 800\nt_final = 40\nnonlinearity = square_dt\neps = -0.5\nphi0 = zero\nphi1 = gaussian:4\n",
    );
    let (code, m) = run(&["simulate", "--config", &blow], &out);
    assert_eq!(code, EXIT_BLOWUP);
    let t = m.blowup_time.unwrap();
    assert!(t > 5.0 && t < 40.0, "{t}");
    let on_disk: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(on_disk["blowup_time"], t);
}

#[test]
fn iterate_writes_traces() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, m) = run(&["iterate", "--sigma", "1/10", "--region", "exterior"], tmp.path());
    assert_eq!(code, 0);
    assert_eq!(m.outputs.len(), 1);
    let text = std::fs::read_to_string(&m.outputs[0]).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.contains("phi=(1/1,0/1,1/1,0/1)"), "{last}");
    assert_eq!(m.config_hash.unwrap().len(), 64);
}

#[test]
fn simulate_measure_check_manifests_are_complete() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "coarse.cfg", COARSE);
    let sim = tmp.path().join("sim");
    let (code, m) = run(&["simulate", "--config", &cfg], &sim);
    assert_eq!(code, 0, "{:?}", m.error);
    let traj = sim.join("trajectory.bin");
    assert!(m.outputs.contains(&traj));
    let stored = read_trajectory(&traj).unwrap();
    assert_eq!(stored.config.to_text(), std::fs::read_to_string(sim.join("config.cfg")).unwrap());

    let traj = traj.display().to_string();
    for suite in ["norms", "envelopes", "fit"] {
        let out = tmp.path().join(suite);
        let (code, m) = run(&["measure", "--traj", &traj, "--suite", suite], &out);
        assert_eq!(code, 0, "{suite}: {:?}", m.error);
        let mut listed: Vec<_> = m.outputs.iter().map(|p| p.file_name().unwrap().to_owned()).collect();
        let mut present: Vec<_> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .filter(|n| n != "manifest.json")
            .collect();
        listed.sort();
        present.sort();
        assert_eq!(listed, present, "{suite}");
    }
    let norms = std::fs::read_to_string(tmp.path().join("norms/norms.csv")).unwrap();
    assert!(norms.starts_with("kind,T,R_or_U,word,value\nLE,"));

    // dr = 0.5 under-resolves the smallest sobolev_RR block; the other kind still reports.
    let out = tmp.path().join("chk");
    let (code, m) = run(&["check", "--traj", &traj, "--kinds", "cone_hardy,sobolev_RR"], &out);
    assert_eq!(code, 1);
    let err = m.error.unwrap();
    assert!(err.contains("sobolev_RR") && !err.contains("cone_hardy"), "{err}");
    let csv = std::fs::read_to_string(out.join("checks.csv")).unwrap();
    assert!(csv.contains("check:cone_hardy:ratio,32.0,"));
    assert!(out.join("checks.json").exists());
}

#[test]
fn sweep_runs_each_member() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "coarse.cfg", COARSE);
    let (code, m) = run(&["sweep", "--config", &cfg, "--vary", "epsilon=0.005,0.01,0.02", "--jobs", "2"], tmp.path());
    assert_eq!(code, 0, "{:?}", m.error);
    assert_eq!(m.children.len(), 3);
    for c in &m.children {
        assert_eq!(c.exit_code, 0, "{:?}", c.error);
        for p in &c.outputs {
            assert!(p.exists() && m.outputs.contains(p));
        }
    }
    for name in ["eps-0.005", "eps-0.01", "eps-0.02"] {
        assert!(!tmp.path().join(name).exists());
    }
    let slopes: Vec<Vec<f64>> = ["0.005", "0.01", "0.02"]
        .iter()
        .map(|e| {
            let text = std::fs::read_to_string(tmp.path().join(format!("epsilon-{e}/summary.json"))).unwrap();
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            v["fits"].as_array().unwrap().iter().map(|f| f["slope"].as_f64().unwrap()).collect()
        })
        .collect();
    for j in 0..2 {
        let (lo, hi) = slopes.iter().map(|s| s[j]).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        assert!(hi - lo <= 0.05, "{slopes:?}");
    }
    let (code, _) = run(&["sweep", "--config", &cfg, "--vary", "wobble=1,2"], tmp.path());
    assert_eq!(code, EXIT_CONFIG);
}
