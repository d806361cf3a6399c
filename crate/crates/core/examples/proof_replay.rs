//! Replay every reduction case over the small parameter grid and print one
//! line per instance with the status of each step.

use std::collections::BTreeMap;

use steenrod_hit::verify::{case_grid, replay_case, Verifier};

fn main() {
    let v = Verifier::default();
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (case, spec) in case_grid() {
        let r = replay_case(&v, case, &spec).unwrap();
        let e = tally.entry(case.to_string()).or_default();
        e.0 += 1;
        e.1 += r.passed as usize;
        println!(
            "{case} a={} exps={:?}: {}",
            spec.a,
            spec.exps,
            r.status.as_str()
        );
        for s in &r.steps {
            println!("    {:<9} {}", s.status.as_str(), s.name);
        }
        for note in &r.notes {
            println!("    note: {note}");
        }
    }
    println!();
    for (case, (n, ok)) in tally {
        println!("{case}: {ok}/{n} passed");
    }
}
