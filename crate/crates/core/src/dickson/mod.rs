//! `V_n`, the Dickson invariants `Q_{n,s}`, and monomials in them.
//!
//! `V_n` is the product of the `2^{n-1}` linear forms
//! `α_1 x_1 + ... + α_{n-1} x_{n-1} + x_n`.  The Dickson invariants are built
//! by the recursion `Q_{n+1,k} = Q_{n,k-1}^2 + V_{n+1} Q_{n,k}` with
//! `Q_{1,0} = x_1`, `Q_{n,n} = 1` and `Q_{n,-1} = 0`; an independent
//! construction from `∏_{v ∈ F2^n} (T + v·x)` is kept as an oracle.

pub mod coords;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2poly::{F2Error, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DicksonError {
    #[error("Dickson index s = {s} out of range 0..={n}")]
    IndexOutOfRange { n: usize, s: usize },
    #[error("the Dickson algebra needs n >= 1")]
    NoVariables,
    #[error("exponent list has {found} entries, expected {expected}")]
    ExponentCount { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] F2Error),
}

/// `V_n` in `n` variables, of degree `2^{n-1}`.
pub fn v_poly(n: usize) -> Result<Polynomial, DicksonError> {
    if n == 0 {
        return Err(DicksonError::NoVariables);
    }
    let xn = Polynomial::var(n, n - 1)?;
    let mut acc = Polynomial::one(n);
    for alpha in 0u64..(1u64 << (n - 1)) {
        let mut form = xn.clone();
        for j in 0..n - 1 {
            if alpha >> j & 1 == 1 {
                form = &form + &Polynomial::var(n, j)?;
            }
        }
        acc = acc.try_mul(&form)?;
    }
    Ok(acc)
}

fn dickson_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Polynomial>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Polynomial>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `[Q_{n,0}, ..., Q_{n,n}]` in `n` variables.
pub fn dickson_all(n: usize) -> Result<Arc<Vec<Polynomial>>, DicksonError> {
    if n == 0 {
        return Err(DicksonError::NoVariables);
    }
    if let Some(hit) = dickson_cache().lock().expect("dickson cache").get(&n) {
        return Ok(hit.clone());
    }
    let qs = if n == 1 {
        vec![Polynomial::var(1, 0)?, Polynomial::one(1)]
    } else {
        let prev = dickson_all(n - 1)?;
        let v = v_poly(n)?;
        let prev: Vec<Polynomial> = prev.iter().map(|q| q.embed(n)).collect::<Result<_, _>>()?;
        let mut qs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut q = Polynomial::zero(n);
            if k >= 1 {
                q = &q + &prev[k - 1].square();
            }
            if k < n {
                q = &q + &v.try_mul(&prev[k])?;
            }
            qs.push(q);
        }
        qs
    };
    let qs = Arc::new(qs);
    dickson_cache()
        .lock()
        .expect("dickson cache")
        .insert(n, qs.clone());
    Ok(qs)
}

/// `Q_{n,s}` in `n` variables, of degree `2^n - 2^s`.
pub fn dickson_q(n: usize, s: usize) -> Result<Polynomial, DicksonError> {
    if n == 0 {
        return Err(DicksonError::NoVariables);
    }
    if s > n {
        return Err(DicksonError::IndexOutOfRange { n, s });
    }
    Ok(dickson_all(n)?[s].clone())
}

/// `Q_{n,s}` read off as the coefficient of `T^{2^s}` in
/// `∏_{v ∈ F2^n} (T + v_1 x_1 + ... + v_n x_n)`.
pub fn dickson_q_oracle(n: usize, s: usize) -> Result<Polynomial, DicksonError> {
    if n == 0 {
        return Err(DicksonError::NoVariables);
    }
    if s > n {
        return Err(DicksonError::IndexOutOfRange { n, s });
    }
    // T is the extra last variable
    let big = n + 1;
    let t = Polynomial::var(big, n)?;
    let mut product = Polynomial::one(big);
    for v in 0u64..(1u64 << n) {
        let mut form = t.clone();
        for j in 0..n {
            if v >> j & 1 == 1 {
                form = &form + &Polynomial::var(big, j)?;
            }
        }
        product = product.try_mul(&form)?;
    }
    let target = 1u32 << s;
    let terms = product
        .terms()
        .iter()
        .filter(|m| m.exps()[n] == target)
        .map(|m| Monomial::new(m.exps()[..n].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_monomials(n, terms)?)
}

/// Exponent data for `V_{n+1}^a · Q_{n,0}^{e_0} ⋯ Q_{n,n-1}^{e_{n-1}}`.
///
/// With `a = 0` this is a plain monomial of the Dickson algebra `D_n`, living
/// in `n` variables; otherwise it lives in `n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DicksonSpec {
    pub n: usize,
    pub a: u32,
    pub exps: Vec<u32>,
}

impl DicksonSpec {
    pub fn new(n: usize, a: u32, exps: Vec<u32>) -> Result<Self, DicksonError> {
        if n == 0 {
            return Err(DicksonError::NoVariables);
        }
        if exps.len() != n {
            return Err(DicksonError::ExponentCount {
                expected: n,
                found: exps.len(),
            });
        }
        Ok(DicksonSpec { n, a, exps })
    }

    pub fn plain(n: usize, exps: Vec<u32>) -> Result<Self, DicksonError> {
        Self::new(n, 0, exps)
    }

    /// `a·2^n + Σ_s e_s (2^n - 2^s)`.
    pub fn degree(&self) -> u64 {
        let top = 1u64 << self.n;
        self.a as u64 * top
            + self
                .exps
                .iter()
                .enumerate()
                .map(|(s, &e)| e as u64 * (top - (1u64 << s)))
                .sum::<u64>()
    }

    /// Variables the polynomial lives in.
    pub fn nvars(&self) -> usize {
        if self.a == 0 {
            self.n
        } else {
            self.n + 1
        }
    }
}

/// Expand a [`DicksonSpec`] into a polynomial in [`DicksonSpec::nvars`]
/// variables.
pub fn a_form(spec: &DicksonSpec) -> Result<Polynomial, DicksonError> {
    a_form_in(spec, spec.nvars())
}

/// As [`a_form`], embedded in `nvars >= spec.nvars()` variables.
pub fn a_form_in(spec: &DicksonSpec, nvars: usize) -> Result<Polynomial, DicksonError> {
    if spec.exps.len() != spec.n {
        return Err(DicksonError::ExponentCount {
            expected: spec.n,
            found: spec.exps.len(),
        });
    }
    let qs = dickson_all(spec.n)?;
    let mut acc = Polynomial::one(spec.n);
    for (q, &e) in qs.iter().zip(&spec.exps) {
        if e > 0 {
            acc = acc.try_mul(&q.try_pow(e as u64)?)?;
        }
    }
    let mut acc = acc.embed(nvars)?;
    if spec.a > 0 {
        let v = v_poly(spec.n + 1)?.embed(nvars)?;
        acc = acc.try_mul(&v.try_pow(spec.a as u64)?)?;
    }
    Ok(acc)
}

/// Substitute `x_j ↦ images[j]` into `p`.
pub fn substitute(p: &Polynomial, images: &[Polynomial]) -> Result<Polynomial, F2Error> {
    if images.len() != p.nvars() {
        return Err(F2Error::NvarsMismatch {
            left: p.nvars(),
            right: images.len(),
        });
    }
    let target = images.first().map(Polynomial::nvars).unwrap_or(1);
    let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut acc = Polynomial::zero(target);
    for m in p.terms() {
        let mut term = Polynomial::one(target);
        for (j, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = match powers.get(&(j, e)) {
                Some(pw) => pw.clone(),
                None => {
                    let pw = images[j].try_pow(e as u64)?;
                    powers.insert((j, e), pw.clone());
                    pw
                }
            };
            term = term.try_mul(&pw)?;
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// Whether `p` is fixed by the transposition `x1 ↔ x2`, the cyclic shift
/// `x_j ↦ x_{j+1}` and the transvection `x1 ↦ x1 + x2`.  These generate
/// `GL(n, F2)`.
pub fn gl_invariance_check(n: usize, p: &Polynomial) -> Result<bool, DicksonError> {
    if p.nvars() != n {
        return Err(F2Error::NvarsMismatch {
            left: n,
            right: p.nvars(),
        }
        .into());
    }
    if n == 1 {
        return Ok(true);
    }
    let vars: Vec<Polynomial> = (0..n)
        .map(|j| Polynomial::var(n, j))
        .collect::<Result<_, _>>()?;
    let mut swap = vars.clone();
    swap.swap(0, 1);
    let cycle: Vec<Polynomial> = (0..n).map(|j| vars[(j + 1) % n].clone()).collect();
    let mut transvection = vars.clone();
    transvection[0] = &vars[0] + &vars[1];
    for images in [swap, cycle, transvection] {
        if substitute(p, &images)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All plain `D_n` monomials of degree `d`, lexicographic in
/// `(e_0, ..., e_{n-1})`.
pub fn enumerate_dickson_monomials(n: usize, d: u64) -> Vec<DicksonSpec> {
    assert!(n >= 1, "the Dickson algebra needs n >= 1");
    let weights: Vec<u64> = (0..n).map(|s| (1u64 << n) - (1u64 << s)).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate_rec(&weights, 0, d, &mut exps, &mut out);
    out.into_iter()
        .map(|e| DicksonSpec { n, a: 0, exps: e })
        .collect()
}

fn enumerate_rec(w: &[u64], pos: usize, rem: u64, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == w.len() {
        if rem == 0 {
            out.push(exps.clone());
        }
        return;
    }
    let max = rem / w[pos];
    for e in 0..=max {
        exps[pos] = e as u32;
        enumerate_rec(w, pos + 1, rem - e * w[pos], exps, out);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_small() {
        assert_eq!(v_poly(1).unwrap().to_string(), "x1");
        assert_eq!(v_poly(2).unwrap().to_string(), "x1*x2 + x2^2");
        assert_eq!(v_poly(4).unwrap().degree(), Some(8));
        assert!(v_poly(0).is_err());
    }

    #[test]
    fn q_small() {
        assert_eq!(dickson_q(2, 1).unwrap().to_string(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(dickson_q(2, 0).unwrap().to_string(), "x1^2*x2 + x1*x2^2");
        assert!(dickson_q(3, 3).unwrap().is_one());
        assert_eq!(
            dickson_q(2, 3),
            Err(DicksonError::IndexOutOfRange { n: 2, s: 3 })
        );
    }

    #[test]
    fn oracle_small() {
        assert_eq!(dickson_q_oracle(1, 0).unwrap().to_string(), "x1");
        assert_eq!(
            dickson_q_oracle(2, 1).unwrap().to_string(),
            "x1^2 + x1*x2 + x2^2"
        );
        assert!(dickson_q_oracle(3, 3).unwrap().is_one());
        assert!(dickson_q_oracle(3, 4).is_err());
    }

    #[test]
    fn recursion_matches_oracle_up_to_four() {
        for n in 1..=4 {
            for s in 0..=n {
                let q = dickson_q(n, s).unwrap();
                assert_eq!(q, dickson_q_oracle(n, s).unwrap(), "Q_{{{n},{s}}}");
                if s < n {
                    assert_eq!(q.degree(), Some((1u64 << n) - (1u64 << s)));
                }
            }
        }
    }

    #[test]
    fn a_forms() {
        let s = DicksonSpec::new(3, 0, vec![0, 0, 1]).unwrap();
        assert_eq!(s.degree(), 4);
        assert_eq!(a_form(&s).unwrap(), dickson_q(3, 2).unwrap());
        let s = DicksonSpec::new(3, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(s.degree(), 8);
        assert_eq!(a_form(&s).unwrap(), v_poly(4).unwrap());
        let s = DicksonSpec::new(3, 1, vec![0, 1, 1]).unwrap();
        assert_eq!(s.degree(), 18);
        let expected = &(&v_poly(4).unwrap() * &dickson_q(3, 1).unwrap().embed(4).unwrap())
            * &dickson_q(3, 2).unwrap().embed(4).unwrap();
        let got = a_form(&s).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.degree(), Some(18));
        assert!(DicksonSpec::new(3, 0, vec![1]).is_err());
    }

    #[test]
    fn gl_invariance() {
        assert!(gl_invariance_check(2, &dickson_q(2, 1).unwrap()).unwrap());
        assert!(!gl_invariance_check(2, &Polynomial::var(2, 0).unwrap()).unwrap());
        assert!(!gl_invariance_check(3, &v_poly(3).unwrap()).unwrap());
        for n in 1..=4 {
            for s in 0..n {
                assert!(gl_invariance_check(n, &dickson_q(n, s).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn enumeration() {
        let ex = |n, d| -> Vec<Vec<u32>> {
            enumerate_dickson_monomials(n, d)
                .into_iter()
                .map(|s| s.exps)
                .collect()
        };
        assert_eq!(ex(4, 8), vec![vec![0, 0, 0, 1]]);
        assert!(ex(4, 7).is_empty());
        assert_eq!(ex(2, 5), vec![vec![1, 1]]);
        assert_eq!(ex(3, 0), vec![vec![0, 0, 0]]);
        for spec in enumerate_dickson_monomials(3, 24) {
            assert_eq!(spec.degree(), 24);
        }
    }
}
