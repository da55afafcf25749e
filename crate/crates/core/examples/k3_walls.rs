//! All-fake wall verdicts for Mukai vectors on Picard-rank-one K3 surfaces.

use mukai::lattice::MukaiVector;
use mukai::walls::all_walls_fake;

fn main() -> mukai::Result<()> {
    let cases = [(132, (4, 1, 16)), (510, (6, 1, 42)), (1160, (8, 1, 72)), (2210, (10, 1, 110)), (4, (1, 0, -1))];
    for (h2, (r, t, s)) in cases {
        let v = MukaiVector::from_i64(r, t, s, h2 / 2)?;
        let w = all_walls_fake(&v)?;
        println!("h^2 = {h2}, v = {v}: {} (dim {}, {} pairs)", w.strength, w.dim, w.pairs.len());
        for c in &w.candidates {
            let kind = c.witness_kind.map_or("-".to_string(), |k| k.to_string());
            let wit = c.candidate.witness.as_ref().map_or("-".to_string(), |a| a.to_string());
            println!("    (m, k) = ({}, {}): witness {wit} [{kind}]", c.candidate.m, c.candidate.k);
        }
    }
    Ok(())
}
