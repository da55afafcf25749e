//! Special cubic fourfolds: discriminant conditions and the Fano variety of lines.

use mukai::cubic::{discriminant_table, fano_positive_entropy};
use num_bigint::BigInt;

fn main() -> mukai::Result<()> {
    for d in [74, 14] {
        let f = fano_positive_entropy(&BigInt::from(d))?;
        println!("d = {d}: NS Gram {:?}", f.lattice.ns_gram.row_vecs());
        println!("    (**) {}, (***) {}, positive {}", f.star2.holds, f.star3.solvable, f.positive);
        println!("    {}", f.statement);
    }
    println!("admissible d <= 100 satisfying (**) but not (***):");
    for row in discriminant_table(100)? {
        if row.star2 && !row.star3 {
            println!("    {}", row.d);
        }
    }
    Ok(())
}
