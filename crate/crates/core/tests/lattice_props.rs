mod common;

use mukai::lattice::{
    mukai_pairing, orthogonal_complement, saturate, span, IntegerLattice, MukaiVector,
};
use mukai::matrix::Matrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i128>>> {
    prop::collection::vec(-50i128..=50, n * (n + 1) / 2).prop_map(move |xs| {
        let mut g = vec![vec![0; n]; n];
        let mut it = xs.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        g
    })
}

fn gram() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1usize..=4).prop_flat_map(symmetric).prop_filter("non-degenerate", |g| common::det(g) != 0)
}

fn to_matrix(g: &[Vec<i128>]) -> Matrix {
    Matrix::from_rows(g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn mukai() -> impl Strategy<Value = MukaiVector> {
    (1i64..=70, -30i64..=30, -5i64..=5, -30i64..=30)
        .prop_filter("nonzero", |(_, r, t, s)| (*r, *t, *s) != (0, 0, 0))
        .prop_map(|(d, r, t, s)| MukaiVector::from_i64(r, t, s, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_is_product_of_invariant_factors(g in gram()) {
        let l = IntegerLattice::new(to_matrix(&g)).unwrap();
        let product: BigInt = l.gram().smith_invariants().iter().product();
        prop_assert_eq!(product.abs(), BigInt::from(common::det(&g).abs()));
        prop_assert_eq!(l.discriminant(), BigInt::from(common::det(&g)));
        let ours: Vec<i128> = l.gram().smith_invariants().iter().map(|x| x.abs().to_i128().unwrap()).collect();
        prop_assert_eq!(ours, common::invariant_factors(&g));
    }

    #[test]
    fn signature_matches_elimination(g in gram()) {
        let l = IntegerLattice::new(to_matrix(&g)).unwrap();
        let (p, q) = l.signature();
        prop_assert_eq!(p + q, g.len());
        prop_assert_eq!((p, q), common::inertia(&g));
    }

    #[test]
    fn mukai_pairing_is_symmetric(v in mukai(), r in -9i64..=9, t in -9i64..=9, s in -9i64..=9) {
        let w = MukaiVector::from_i64(r, t, s, v.d.to_i64().unwrap()).unwrap();
        prop_assert_eq!(mukai_pairing(&v, &w).unwrap(), mukai_pairing(&w, &v).unwrap());
        // <v, v> = 2d t^2 - 2 r s
        let [vr, vt, vs] = v.coords();
        prop_assert_eq!(v.square(), BigInt::from(2) * &v.d * &vt * &vt - BigInt::from(2) * vr * vs);
    }

    #[test]
    fn complement_is_orthogonal_and_saturated(v in mukai()) {
        let perp = orthogonal_complement(&v).unwrap();
        prop_assert_eq!(perp.rank(), 2);
        for row in perp.basis().row_vecs() {
            let a = MukaiVector::from_coords(&row, &v.d).unwrap();
            prop_assert!(a.pair(&v).unwrap().is_zero());
        }
        prop_assert_eq!(perp.saturation_index(), BigInt::from(1));
        // Zv + v^perp has index n in the Mukai lattice, so v^2 det(v^perp) = n^2 det
        let sq = v.square();
        if !sq.is_zero() {
            let det = -(BigInt::from(2) * &v.d);
            let ratio = perp.gram().determinant() * &sq;
            prop_assert!((&ratio % &det).is_zero());
            let n2 = ratio / det;
            prop_assert!(n2.is_positive());
            let n = n2.sqrt();
            prop_assert_eq!(&n * &n, n2);
        }
    }

    #[test]
    fn saturation_is_idempotent(v in mukai(), r in -9i64..=9, t in -3i64..=3, s in -9i64..=9) {
        let w = MukaiVector::from_i64(r, t, s, v.d.to_i64().unwrap()).unwrap();
        let Ok(h) = span(&[v.clone(), w.clone()]) else { return Ok(()) };
        if h.rank() != 2 {
            return Ok(());
        }
        let sat = saturate(&h);
        prop_assert!(sat.contains(&v.coords()) && sat.contains(&w.coords()));
        let again = saturate(&sat);
        prop_assert_eq!(again.basis(), sat.basis());
        let idx = h.saturation_index();
        prop_assert_eq!(h.gram().determinant(), sat.gram().determinant() * &idx * &idx);
    }
}

#[test]
fn complement_of_the_six_dimensional_example() {
    let v = MukaiVector::from_i64(4, 1, 16, 66).unwrap();
    let perp = orthogonal_complement(&v).unwrap();
    let g: Vec<Vec<i128>> = perp
        .gram()
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect();
    let target = vec![vec![8, -33], vec![-33, 132]];
    assert_eq!(common::det(&g), common::det(&target));
    assert_eq!(common::invariant_factors(&g), common::invariant_factors(&target));
}
