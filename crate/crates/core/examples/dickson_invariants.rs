//! The Dickson invariants, checked three ways: the determinant-style
//! recursion, the orbit-sum oracle, and invariance under GL(n, F2).

use steenrod_hit::dickson::{dickson_q, dickson_q_oracle, gl_invariance_check, v_poly};

fn main() {
    for n in 1..=3 {
        println!("V_{n} = {}", v_poly(n).unwrap());
    }
    println!();
    for n in 1..=4 {
        for s in 0..n {
            let q = dickson_q(n, s).unwrap();
            let oracle = q == dickson_q_oracle(n, s).unwrap();
            let gl = gl_invariance_check(n, &q).unwrap();
            println!(
                "Q({n},{s}): degree {:>2}, {:>4} terms, oracle agrees: {oracle}, GL-invariant: {gl}",
                q.degree().unwrap(),
                q.len()
            );
        }
    }
    println!();
    println!("Q(2,1) = {}", dickson_q(2, 1).unwrap());
    println!("Q(2,0) = {}", dickson_q(2, 0).unwrap());
}
