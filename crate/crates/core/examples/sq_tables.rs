//! Closed forms for Sq^i on V_{n+1} and Q_{n,s} compared with direct
//! expansion, and the identity expressing V_{n+1} through Sq^1.

use steenrod_hit::verify::Verifier;

fn main() {
    let v = Verifier::default();
    for n in 1..=4usize {
        let mut v_ok = 0;
        let mut total = 0;
        for i in 0..=(1u64 << (n - 1)) {
            total += 1;
            v_ok += v.check_sq_on_v(n, i).unwrap().passed as usize;
        }
        let mut q_ok = 0;
        let mut q_total = 0;
        for s in 0..n {
            for i in 0..=((1u64 << n) - (1u64 << s)) {
                q_total += 1;
                q_ok += v.check_sq_on_q(n, s, i).unwrap().passed as usize;
            }
        }
        println!(
            "n = {n}: Sq^i V_{} {v_ok}/{total} exact, Sq^i Q_({n},s) {q_ok}/{q_total} exact",
            n + 1
        );
    }
    println!();
    for n in 1..=4 {
        let r = v.check_v_identity(n).unwrap();
        print!(
            "V_{} = sum_s Sq^1(Q_(n,s) x^(2^s-1)) at n = {n}: {}",
            n + 1,
            r.status.as_str()
        );
        match &r.steps[0].difference {
            Some(d) => println!(", off by {d}"),
            None => println!(),
        }
    }
}
