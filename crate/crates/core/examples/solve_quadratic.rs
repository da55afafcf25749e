//! Deciding binary quadratic Diophantine equations with certificates.

use mukai::diophantine::{solve, QuadraticDiophantine};
use mukai::report::{evidence_text, verify_solvability};

fn main() {
    let equations = [
        [4, -33, 66, 0, 0, 1],
        [7, -85, 255, 0, 0, 1],
        [9, -145, 580, 0, 0, 1],
        [6, -4, -24, 0, 0, 2],
        [1, 0, -2, 0, 0, -1],
        [1, 0, 1, -3, 2, -7],
        [0, 1, 0, 2, 3, -11],
    ];
    for c in equations {
        let eq = QuadraticDiophantine::from_i64(c);
        let cert = solve(&eq);
        print!("{eq}: {:?}", cert.status);
        if let Some(w) = &cert.witness {
            print!(", witness ({}, {})", w[0], w[1]);
        }
        if let Some(e) = &cert.obstruction {
            print!(", {}", evidence_text(e));
        }
        println!();
        for class in &cert.fundamental_solutions {
            let p = &class.representative;
            let next = class.generator.advance(p, 1);
            println!("    class ({}, {}) -> next ({}, {})", p[0], p[1], next[0], next[1]);
        }
        assert!(verify_solvability(&cert).is_ok());
    }
}
