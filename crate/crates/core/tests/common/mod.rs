#![allow(dead_code)]

use proptest::prelude::*;
use steenrod_hit::{Monomial, Polynomial};

pub fn poly_in(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(prop::collection::vec(0..=max_deg, nvars), 0..=max_terms).prop_map(
        move |rows| {
            let terms = rows
                .into_iter()
                .map(|e| Monomial::new(e).unwrap())
                .collect::<Vec<_>>();
            Polynomial::from_monomials(nvars, terms).unwrap()
        },
    )
}

/// Homogeneous of degree `d`: each term distributes `d` among the variables.
pub fn homogeneous_in(nvars: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(prop::collection::vec(0..nvars, d as usize), 0..=max_terms).prop_map(
        move |rows| {
            let terms = rows
                .into_iter()
                .map(|slots| {
                    let mut e = vec![0u32; nvars];
                    for s in slots {
                        e[s] += 1;
                    }
                    Monomial::new(e).unwrap()
                })
                .collect::<Vec<_>>();
            Polynomial::from_monomials(nvars, terms).unwrap()
        },
    )
}

pub fn pair_in(max_deg: u32, max_terms: usize) -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(move |n| {
        (
            poly_in(n, max_deg, max_terms),
            poly_in(n, max_deg, max_terms),
        )
    })
}

/// `C(a, b) mod 2` by Lucas.
fn binom2(a: u32, b: u32) -> bool {
    b <= a && (a & b) == b
}

/// Exponent vectors of `Sq^k(x^e)` via the one-variable binomial rule and
/// Cartan, written out directly.
fn oracle_sq(k: u32, e: &[u32], out: &mut Vec<Vec<u32>>) {
    fn go(k: u32, e: &[u32], idx: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == e.len() {
            if k == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for j in 0..=k.min(e[idx]) {
            if binom2(e[idx], j) {
                acc.push(e[idx] + j);
                go(k - j, e, idx + 1, acc, out);
                acc.pop();
            }
        }
    }
    go(k, e, 0, &mut Vec::new(), out);
}

fn compositions(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The degree-`d` hit space in `n` variables as an echelon basis over
/// `u128` masks indexed by `monomials`, built from every `Sq^i(m)`, `i >= 1`.
pub struct HitOracle {
    pub monomials: Vec<Vec<u32>>,
    rows: Vec<u128>,
}

impl HitOracle {
    pub fn new(n: usize, d: u32) -> Self {
        let monomials = compositions(n, d);
        assert!(monomials.len() <= 128, "oracle limited to 128 monomials");
        let index = |e: &Vec<u32>| monomials.iter().position(|m| m == e).unwrap();
        let mut rows: Vec<u128> = Vec::new();
        for i in 1..=d {
            for m in compositions(n, d - i) {
                let mut terms = Vec::new();
                oracle_sq(i, &m, &mut terms);
                let mut v = 0u128;
                for t in &terms {
                    v ^= 1 << index(t);
                }
                insert(&mut rows, v);
            }
        }
        HitOracle { monomials, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, mut v: u128) -> bool {
        for r in &self.rows {
            let top = 127 - r.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= r;
            }
        }
        v == 0
    }

    pub fn polynomial(&self, mask: u128) -> Polynomial {
        let n = self.monomials[0].len();
        let terms = (0..self.monomials.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| Monomial::new(self.monomials[k].clone()).unwrap())
            .collect::<Vec<_>>();
        Polynomial::from_monomials(n, terms).unwrap()
    }
}

fn insert(rows: &mut Vec<u128>, mut v: u128) {
    for r in rows.iter() {
        let top = 127 - r.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= r;
        }
    }
    if v == 0 {
        return;
    }
    let top = 127 - v.leading_zeros();
    for r in rows.iter_mut() {
        if *r >> top & 1 == 1 {
            *r ^= v;
        }
    }
    rows.push(v);
    rows.sort_by_key(|r| std::cmp::Reverse(127 - r.leading_zeros()));
}

/// Compare the solver against the oracle on every polynomial of every
/// component with `n <= max_n` and `d <= max_d`.  Returns the number of
/// polynomials checked, or a description of the first disagreement.
pub fn exhaustive_agreement(
    solver: &steenrod_hit::HitSolver,
    max_n: usize,
    max_d: u32,
) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=max_n {
        for d in 0..=max_d {
            let oracle = HitOracle::new(n, d);
            let dim = oracle.monomials.len();
            assert!(dim <= 16, "exhaustive check limited to 2^16 polynomials");
            for mask in 1u128..(1 << dim) {
                let f = oracle.polynomial(mask);
                let expected = oracle.contains(mask);
                let answer = solver.is_hit(&f).map_err(|e| e.to_string())?;
                if answer.is_hit() != expected {
                    return Err(format!(
                        "n={n} d={d} f={f}: solver {}, oracle {expected}",
                        answer.is_hit()
                    ));
                }
                if let Some(c) = answer.certificate() {
                    if !c.verify(&f) {
                        return Err(format!("n={n} d={d} f={f}: certificate does not verify"));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `x^d` in one variable is hit exactly when `d + 1` is not a power of two.
pub fn spike_law(solver: &steenrod_hit::HitSolver, max_d: u32) -> Result<(), String> {
    let x = Polynomial::var(1, 0).unwrap();
    for d in 0..=max_d {
        let f = x.pow(u64::from(d));
        let answer = solver.is_hit(&f).map_err(|e| e.to_string())?;
        let expected = !(d + 1).is_power_of_two();
        if answer.is_hit() != expected {
            return Err(format!("x^{d}: solver says hit = {}", answer.is_hit()));
        }
        if let Some(c) = answer.certificate() {
            if !c.verify(&f) {
                return Err(format!("x^{d}: certificate does not verify"));
            }
        }
    }
    Ok(())
}
