mod common;

use common::{exhaustive_agreement, spike_law, HitOracle};
use steenrod_hit::hitsolver::GeneratorMode;
use steenrod_hit::{HitSolver, SolverConfig};

#[test]
fn spikes_in_one_variable() {
    spike_law(&HitSolver::default(), 64).unwrap();
}

#[test]
fn every_polynomial_in_two_variables() {
    let checked = exhaustive_agreement(&HitSolver::default(), 2, 10).unwrap();
    // 11 one-variable components plus 2^(d+1) - 1 polynomials per two-variable degree
    assert_eq!(checked, 11 + 4083);
}

#[test]
fn all_squares_mode_agrees() {
    let solver = HitSolver::new(SolverConfig {
        generators: GeneratorMode::AllSquares,
        ..SolverConfig::default()
    });
    exhaustive_agreement(&solver, 2, 8).unwrap();
}

#[test]
fn ranks_in_three_and_four_variables() {
    let solver = HitSolver::default();
    for (n, dmax) in [(3, 12), (4, 7)] {
        for d in 1..=dmax {
            let oracle = HitOracle::new(n, d);
            if oracle.monomials.len() > 128 {
                continue;
            }
            let basis = solver.hit_space_basis(n, d).unwrap();
            assert_eq!(basis.rank(), oracle.rank(), "n={n} d={d}");
        }
    }
}

#[test]
fn monomials_in_three_variables() {
    let solver = HitSolver::default();
    for d in 1..=9 {
        let oracle = HitOracle::new(3, d);
        for k in 0..oracle.monomials.len() {
            let f = oracle.polynomial(1 << k);
            let answer = solver.is_hit(&f).unwrap();
            assert_eq!(answer.is_hit(), oracle.contains(1 << k), "{f}");
        }
    }
}

#[test]
fn restricted_generators() {
    // x1^4*x2 needs Sq^2: hit with i <= 2 but not with i <= 1
    let f = steenrod_hit::cli::eval_str("x1^4*x2", 2).unwrap();
    let solver = HitSolver::default();
    assert!(solver.is_hit_bounded(&f, 2).unwrap().is_hit());
    assert!(!solver.is_hit_bounded(&f, 1).unwrap().is_hit());
    let c = solver.is_hit_bounded(&f, 2).unwrap();
    assert!(c
        .certificate()
        .unwrap()
        .terms()
        .iter()
        .all(|(i, _)| *i <= 2));
}
