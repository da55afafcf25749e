//! Producing a JSON report and replaying its certificates.

use mukai::cli::k3_walls;
use mukai::diophantine::SolverConfig;
use mukai::report::{verify, Report};
use num_bigint::BigInt;

fn main() -> mukai::Result<()> {
    let outcome = k3_walls(&BigInt::from(510), "6,1,42", &SolverConfig::default())?;
    let json = outcome.report.to_json();
    println!("{} bytes of JSON, {} certificates", json.len(), outcome.report.certificates.len());

    let back = Report::from_json(&json)?;
    assert_eq!(back, outcome.report);
    let result = verify(&back);
    println!("checked {}, failures {:?}", result.checked, result.failures);

    // tamper with a certificate: the replay must notice
    let tampered = json.replacen("\"modulus\": \"5\"", "\"modulus\": \"7\"", 1);
    let result = verify(&Report::from_json(&tampered)?);
    println!("after tampering: {} failure(s)", result.failures.len());
    Ok(())
}
