//! Mukai lattice basics: pairing, orthogonal complement, discriminant group.

use mukai::lattice::{mukai_lattice, orthogonal_complement, saturate, span, MukaiVector};
use num_bigint::BigInt;

fn main() -> mukai::Result<()> {
    let d = BigInt::from(66);
    let lattice = mukai_lattice(&d)?;
    println!("Mukai lattice at h^2 = 132: signature {:?}, discriminant {}", lattice.signature(), lattice.discriminant());

    let v = MukaiVector::from_i64(4, 1, 16, 66)?;
    println!("v = {v}, v^2 = {}", v.square());

    let perp = orthogonal_complement(&v)?;
    let gram = perp.gram();
    println!("v^perp basis {:?}", perp.basis().row_vecs());
    println!("v^perp Gram {:?}, det {}", gram.row_vecs(), gram.determinant());
    println!("v^perp discriminant group {:?}", perp.lattice()?.discriminant_group());

    let a = MukaiVector::from_i64(1, 0, -4, 66)?;
    let h = span(&[v.clone(), a.clone()])?;
    let sat = saturate(&h);
    println!("<v, {a}>: index {} in its saturation, Gram {:?}", h.saturation_index(), sat.gram().row_vecs());
    Ok(())
}
