//! Hit tests with certificates and non-hit witnesses, including the
//! restricted test that only admits Sq^1..Sq^K.

use steenrod_hit::cli::eval_str;
use steenrod_hit::{HitAnswer, HitSolver};

fn show(solver: &HitSolver, text: &str, nvars: usize, max_sq: Option<u32>) {
    let f = eval_str(text, nvars).unwrap();
    let answer = match max_sq {
        Some(k) => solver.is_hit_bounded(&f, k).unwrap(),
        None => solver.is_hit(&f).unwrap(),
    };
    let bound = max_sq.map(|k| format!(" (i <= {k})")).unwrap_or_default();
    match answer {
        HitAnswer::Hit(cert) => {
            println!(
                "{text} in {nvars} vars{bound}: hit, certificate verifies: {}",
                cert.verify(&f)
            );
            for (i, u) in cert.terms() {
                println!("    ({i}, {u})");
            }
        }
        HitAnswer::NotHit(w) => {
            println!(
                "{text} in {nvars} vars{bound}: not hit, residual {}",
                w.residual_poly
            );
        }
    }
}

fn main() {
    let solver = HitSolver::default();
    show(&solver, "x1^3", 1, None);
    show(&solver, "x1^5", 1, None);
    show(&solver, "Q(1,0)", 1, None);
    show(&solver, "Q(2,1)", 2, None);
    show(&solver, "Q(2,0)", 2, None);
    show(&solver, "Q(3,2)", 3, None);
    show(&solver, "x1^4*x2", 2, None);
    show(&solver, "x1^4*x2", 2, Some(2));
    show(&solver, "x1^4*x2", 2, Some(1));
    // the same polynomial seen in more variables
    show(&solver, "x1^3*x2^3", 2, None);
    show(&solver, "x1^3*x2^3", 3, None);
}
