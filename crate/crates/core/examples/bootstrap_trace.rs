//! Exterior and interior exponent bootstraps for a few values of sigma.

use decaylab::calculus::trace_io::TraceFile;
use decaylab::calculus::{rat, run_exterior_iteration, run_interior_iteration, EngineConfig};

fn main() {
    let denominators: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let denominators = if denominators.is_empty() { vec![10] } else { denominators };
    for q in denominators {
        let cfg = EngineConfig::new(rat(1, q));
        let ext = run_exterior_iteration(&cfg).expect("exterior run");
        let int = run_interior_iteration(&cfg, &ext).expect("interior run");
        print!("{}", TraceFile::from_trace(&ext).to_text());
        print!("{}", TraceFile::from_trace(&int).to_text());
        println!("# {} rule applications\n", ext.applications.len() + int.applications.len());
    }
}
