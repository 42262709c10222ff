//! Compare each checkable rule application with a quadrature fit.

use decaylab::calculus::oracle::check_application;
use decaylab::calculus::{rat, run_exterior_iteration, run_interior_iteration, EngineConfig};

fn main() {
    let cfg = EngineConfig::new(rat(1, 10));
    let ext = run_exterior_iteration(&cfg).unwrap();
    let int = run_interior_iteration(&cfg, &ext).unwrap();
    println!("{:>5} {:>7} {:<10} {:>9} {:>9} {:>7}", "step", "channel", "rule", "symbolic", "fitted", "error");
    for app in ext.applications.iter().chain(&int.applications) {
        if let Some(c) = check_application(app, &[800.0, 1600.0, 3200.0], 1024) {
            let rule = format!("{:?}", app.rule);
            println!("{:>5} {:>7} {:<10} {:>9.4} {:>9.4} {:>7.4}", app.step, app.channel, rule, c.predicted, c.fitted, c.error());
        }
    }
}
