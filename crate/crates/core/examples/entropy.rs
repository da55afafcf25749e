//! Spectral radius of the composed spherical twist and the entropy bounds.

use mukai::entropy::{entropy_report, fundamental_isometry, quadratic_factor};
use mukai::lattice::{IntegerLattice, MukaiVector};
use num_bigint::BigInt;

fn main() -> mukai::Result<()> {
    for d in 1..=5 {
        let d = BigInt::from(d);
        let r = entropy_report(&d, None)?;
        println!(
            "d = {d}: rho in {}, log rho in [{:.12}, {:.12}], factor {:?}",
            r.radius.interval,
            r.log_rho.lo,
            r.log_rho.hi,
            quadratic_factor(&d)?.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    let v = MukaiVector::from_i64(1, 0, -1, 2)?;
    let r = entropy_report(&BigInt::from(2), Some(&v))?;
    println!("d = 2, v = {v}: Phi(v) = v is {:?}, dim M = {:?}", r.fixes_v, r.dim_m.map(|n| n.to_string()));

    let ns = IntegerLattice::from_i64(&[[6, -2], [-2, -24]])?;
    let f = fundamental_isometry(&ns)?;
    println!("NS = [[6, -2], [-2, -24]]: generator {:?}, radius {}", f.isometry.matrix().row_vecs(), f.radius.interval);
    Ok(())
}
