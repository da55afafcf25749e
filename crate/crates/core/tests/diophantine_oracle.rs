mod common;

use mukai::diophantine::{solve, QuadraticDiophantine, Status};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn solver_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1500 {
        let c: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-20..=20));
        let eq = QuadraticDiophantine::from_i64(c);
        let cert = solve(&eq);
        let brute = common::brute_force_solution(c, 300);
        match cert.status {
            Status::Unsolvable => assert!(brute.is_none(), "{eq}: brute force found {brute:?}"),
            Status::Solvable => {
                let w = cert.witness.as_ref().expect("witness");
                assert!(eq.is_solution(w), "{eq}: bad witness");
                for class in &cert.fundamental_solutions {
                    let p = &class.representative;
                    assert!(eq.is_solution(p));
                    for step in [-1, 1] {
                        assert!(eq.is_solution(&class.generator.advance(p, step)), "{eq}");
                    }
                }
            }
            Status::AllPairs => assert!(c.iter().all(|&x| x == 0)),
        }
        if let Some((x, y)) = brute {
            assert!(eq.is_solution(&[BigInt::from(x), BigInt::from(y)]));
        }
    }
}
