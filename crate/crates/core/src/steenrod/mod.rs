//! The Steenrod squares `Sq^i`, their conjugates `χ(Sq^i)`, and composite
//! operator words acting on `F2[x1, ..., xn]`.
//!
//! On a single variable `Sq^k(x^e) = C(e, k) x^{e+k}`, with the binomial read
//! mod 2 (odd exactly when the bits of `k` are a subset of the bits of `e`).
//! A monomial is handled one variable at a time and the per-variable results
//! are combined over all compositions `k_1 + ... + k_n = i`, which is the
//! Cartan formula applied to a product of powers of distinct variables.

mod word;

pub use word::{apply_word, OpKind, OperatorWord, WordParseError};

use rustc_hash::FxHashSet;

use crate::f2poly::{F2Error, Monomial, Polynomial};
use crate::hitsolver::HitCertificate;

/// Calls `emit` once for every monomial in the support of `Sq^i(x^exps)`.
///
/// The emitted monomials are pairwise distinct, so no cancellation happens
/// inside one monomial's image.
pub fn for_each_sq_term(i: u32, exps: &[u32], mut emit: impl FnMut(&[u32])) {
    let n = exps.len();
    let mut suffix = vec![0u64; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] + exps[j] as u64;
    }
    if i as u64 > suffix[0] {
        return;
    }
    let mut out = exps.to_vec();
    rec(0, i as u64, exps, &suffix, &mut out, &mut emit);
}

fn rec(
    pos: usize,
    rem: u64,
    exps: &[u32],
    suffix: &[u64],
    out: &mut [u32],
    emit: &mut impl FnMut(&[u32]),
) {
    if pos == exps.len() {
        if rem == 0 {
            emit(out);
        }
        return;
    }
    let e = exps[pos];
    if rem == 0 {
        out[pos..].copy_from_slice(&exps[pos..]);
        emit(out);
        return;
    }
    // submasks of e, largest first
    let mut k = e;
    loop {
        let kk = k as u64;
        if kk <= rem && rem - kk <= suffix[pos + 1] {
            out[pos] = e.checked_add(k).expect("exponent overflow in Sq");
            rec(pos + 1, rem - kk, exps, suffix, out, emit);
        }
        if k == 0 {
            break;
        }
        k = (k - 1) & e;
    }
    out[pos] = e;
}

/// `Sq^i(m)` for a single monomial.
pub fn sq_monomial(i: u32, m: &Monomial) -> Polynomial {
    let mut terms = Vec::new();
    for_each_sq_term(i, m.exps(), |e| {
        terms.push(Monomial::from_exps_unchecked(e.into()));
    });
    terms.sort_unstable();
    Polynomial::from_sorted_unchecked(m.nvars(), terms)
}

/// `Sq^i(p)`.  Linear in `p`; `Sq^0` is the identity.
pub fn sq(i: u32, p: &Polynomial) -> Polynomial {
    if i == 0 {
        return p.clone();
    }
    let mut set: FxHashSet<Monomial> = FxHashSet::default();
    for m in p.terms() {
        if (i as u64) > m.degree() {
            continue;
        }
        for_each_sq_term(i, m.exps(), |e| {
            let t = Monomial::from_exps_unchecked(e.into());
            if !set.remove(&t) {
                set.insert(t);
            }
        });
    }
    Polynomial::from_set(p.nvars(), set)
}

/// `[χ(Sq^0)p, χ(Sq^1)p, ..., χ(Sq^k)p]`, from the antipode recursion
/// `χ(Sq^m) = Σ_{j=1..m} Sq^j χ(Sq^{m-j})`.
pub fn chi_sq_table(k: u32, p: &Polynomial) -> Vec<Polynomial> {
    let mut table: Vec<Polynomial> = Vec::with_capacity(k as usize + 1);
    table.push(p.clone());
    for m in 1..=k {
        let mut acc = Polynomial::zero(p.nvars());
        for j in 1..=m {
            let inner = &table[(m - j) as usize];
            if inner.is_zero() {
                continue;
            }
            acc = &acc + &sq(j, inner);
        }
        table.push(acc);
    }
    table
}

/// `χ(Sq^k)(p)`.
pub fn chi_sq(k: u32, p: &Polynomial) -> Polynomial {
    chi_sq_table(k, p).pop().expect("table has k+1 entries")
}

/// `u·Sq^k(v) + χ(Sq^k)(u)·v`, which is always hit.
pub fn chi_trick_residue(u: &Polynomial, k: u32, v: &Polynomial) -> Result<Polynomial, F2Error> {
    let lhs = u.try_mul(&sq(k, v))?;
    let rhs = chi_sq(k, u).try_mul(v)?;
    lhs.try_add(&rhs)
}

/// Explicit preimages for [`chi_trick_residue`]:
/// `u·Sq^k(v) + χ(Sq^k)(u)·v = Σ_{j=1..k} Sq^j(χ(Sq^{k-j})(u)·v)`.
pub fn chi_trick_certificate(
    u: &Polynomial,
    k: u32,
    v: &Polynomial,
) -> Result<HitCertificate, F2Error> {
    if u.nvars() != v.nvars() {
        return Err(F2Error::NvarsMismatch {
            left: u.nvars(),
            right: v.nvars(),
        });
    }
    let chis = chi_sq_table(k, u);
    let mut cert = HitCertificate::new(u.nvars());
    for j in 1..=k {
        let w = chis[(k - j) as usize].try_mul(v)?;
        cert.push(j, w);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::binomial;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::var(n, k - 1).unwrap()
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::from_monomial(Monomial::new(e.to_vec()).unwrap())
    }

    #[test]
    fn small_values() {
        assert_eq!(sq(1, &x(1, 1)), x(1, 1).square());
        let x1x2 = &x(2, 1) * &x(2, 2);
        assert_eq!(sq(1, &x1x2).to_string(), "x1^2*x2 + x1*x2^2");
        assert_eq!(sq(0, &x1x2), x1x2);
        assert!(sq(3, &x1x2).is_zero());
        assert_eq!(sq(2, &x1x2), x1x2.square());
    }

    #[test]
    fn one_variable_closed_form() {
        // exact binomials (no Lucas shortcut) as the oracle
        for d in 0..=64u32 {
            for k in 0..=64u32 {
                let expected = if binomial(d as u64, k as u64) % 2 == 1 {
                    mono(&[d + k])
                } else {
                    Polynomial::zero(1)
                };
                assert_eq!(sq(k, &mono(&[d])), expected, "Sq^{k} x^{d}");
            }
        }
    }

    #[test]
    fn chi_low_degrees() {
        let p = &(&x(3, 1) * &x(3, 2).pow(3)) + &x(3, 3).pow(4);
        assert_eq!(chi_sq(1, &p), sq(1, &p));
        assert_eq!(chi_sq(2, &p), sq(2, &p));
        // χ(Sq^3) = Sq^2 Sq^1
        assert_eq!(chi_sq(3, &p), sq(2, &sq(1, &p)));
        assert!(chi_sq(3, &x(1, 1).square()).is_zero());
        // χ(Sq^4) = Sq^4 + Sq^3 Sq^1
        assert_eq!(chi_sq(4, &p), &sq(4, &p) + &sq(3, &sq(1, &p)));
    }

    #[test]
    fn chi_trick_small_cases() {
        let one = Polynomial::one(2);
        let v = &x(2, 1) * &x(2, 2);
        assert_eq!(chi_trick_residue(&one, 1, &v).unwrap(), sq(1, &v));
        assert!(chi_trick_residue(&x(1, 1), 1, &x(1, 1)).unwrap().is_zero());
        let r = chi_trick_residue(&x(2, 1), 1, &x(2, 2)).unwrap();
        assert_eq!(r, sq(1, &v));
        let cert = chi_trick_certificate(&x(2, 1), 1, &x(2, 2)).unwrap();
        assert!(cert.verify(&r));
    }
}
