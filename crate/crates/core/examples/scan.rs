//! Searching a range of h^2 for vectors whose walls are all fake.

use mukai::diophantine::SolverConfig;
use mukai::scan::{scan, worker_count, ScanJob};

fn main() -> mukai::Result<()> {
    let job = ScanJob::new(100, 600, vec![4, 6])?;
    let out = scan(&job, worker_count(None), &SolverConfig::default())?;
    for r in &out.records {
        println!("h^2 = {}, v = {}, v^2 = {}: {}", r.h2, r.v, r.v_squared, r.strength);
    }
    println!("{} examined, truncated: {}", out.examined, out.truncated);
    Ok(())
}
