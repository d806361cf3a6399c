//! Polynomials written in the generators `V_{n+1}, Q_{n,0}, ..., Q_{n,n-1}`.
//!
//! These generators are algebraically independent, so a symbolic polynomial
//! in them determines a unique element of `F2[x1, ..., x_{n+1}]`.  The
//! subalgebra they generate is closed under the Steenrod squares, with the
//! action on generators given by the tables in [`sq_q_case`] and
//! [`sq_v_case`]; the Cartan formula extends it to products.  Working here
//! keeps expansions small where the same element written in `x`-monomials has
//! hundreds of thousands of terms.

use std::collections::HashMap;

use serde::Serialize;

use super::{dickson_all, substitute, v_poly, DicksonError, DicksonSpec};
use crate::f2poly::{Monomial, Polynomial};
use crate::steenrod::{OpKind, OperatorWord};

/// Value of `Sq^i Q_{n,s}` as a product of Dickson invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum QCase {
    /// `Q_{n,r}`, for `i = 2^s - 2^r`, `r <= s`.
    Single {
        r: usize,
    },
    /// `Q_{n,r} Q_{n,t}`, for `i = 2^n - 2^t + 2^s - 2^r`, `r <= s < t <= n-1`.
    Product {
        r: usize,
        t: usize,
    },
    /// `Q_{n,s}^2`, for `i = 2^n - 2^s`.
    Square,
    Zero,
}

/// Value of `Sq^i V_m` in terms of `V_m` and `Q_{m-1,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum VCase {
    Identity,
    /// `V_m Q_{m-1,s}`, for `i = 2^{m-1} - 2^s`, `0 <= s <= m-2`.
    TimesQ {
        s: usize,
    },
    /// `V_m^2`, for `i = 2^{m-1}`.
    Square,
    Zero,
}

/// Which reading of the table applies to `Sq^i Q_{n,s}`.
///
/// The product case is searched with `t <= n - 1`, so `i = 2^n - 2^s` is
/// reported as [`QCase::Square`] only.
pub fn sq_q_case(n: usize, s: usize, i: u64) -> QCase {
    assert!(s < n, "Q_{{n,s}} with s < n");
    let p = |k: usize| 1u64 << k;
    for r in 0..=s {
        if i == p(s) - p(r) {
            return QCase::Single { r };
        }
    }
    if i == p(n) - p(s) {
        return QCase::Square;
    }
    for t in s + 1..n {
        for r in 0..=s {
            if i == p(n) - p(t) + p(s) - p(r) {
                return QCase::Product { r, t };
            }
        }
    }
    QCase::Zero
}

/// Which reading of the table applies to `Sq^i V_m`.
pub fn sq_v_case(m: usize, i: u64) -> VCase {
    assert!(m >= 1);
    let top = 1u64 << (m - 1);
    if i == 0 {
        return VCase::Identity;
    }
    if i == top {
        return VCase::Square;
    }
    for s in 0..m.saturating_sub(1) {
        if i == top - (1u64 << s) {
            return VCase::TimesQ { s };
        }
    }
    VCase::Zero
}

/// Coordinates `(V_{n+1}, Q_{n,0}, ..., Q_{n,n-1})`, or `(Q_{n,0}, ...)` alone.
///
/// A symbolic polynomial is a [`Polynomial`] whose "variables" are these
/// generators: with `V`, slot 0 is `V_{n+1}` and slot `1 + s` is `Q_{n,s}`;
/// without it slot `s` is `Q_{n,s}`.
#[derive(Clone, Debug)]
pub struct DicksonCoords {
    n: usize,
    with_v: bool,
}

impl DicksonCoords {
    pub fn new(n: usize, with_v: bool) -> Self {
        assert!(n >= 1);
        DicksonCoords { n, with_v }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn with_v(&self) -> bool {
        self.with_v
    }

    /// Number of generator slots.
    pub fn slots(&self) -> usize {
        self.n + usize::from(self.with_v)
    }

    /// Variables of the evaluated polynomial.
    pub fn nvars(&self) -> usize {
        self.slots()
    }

    fn q_slot(&self, s: usize) -> usize {
        s + usize::from(self.with_v)
    }

    pub fn weight(&self, slot: usize) -> u64 {
        let top = 1u64 << self.n;
        if self.with_v {
            if slot == 0 {
                top
            } else {
                top - (1u64 << (slot - 1))
            }
        } else {
            top - (1u64 << slot)
        }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.exps()
            .iter()
            .enumerate()
            .map(|(j, &e)| e as u64 * self.weight(j))
            .sum()
    }

    /// The symbolic monomial for a spec.
    pub fn monomial(&self, spec: &DicksonSpec) -> Result<Polynomial, DicksonError> {
        if spec.n != self.n || spec.exps.len() != self.n {
            return Err(DicksonError::ExponentCount {
                expected: self.n,
                found: spec.exps.len(),
            });
        }
        assert!(self.with_v || spec.a == 0, "V exponent without a V slot");
        let mut exps = Vec::with_capacity(self.slots());
        if self.with_v {
            exps.push(spec.a);
        }
        exps.extend_from_slice(&spec.exps);
        Ok(Polynomial::from_monomial(Monomial::new(exps)?))
    }

    pub fn spec_of(&self, m: &Monomial) -> DicksonSpec {
        let (a, exps) = if self.with_v {
            (m.exps()[0], m.exps()[1..].to_vec())
        } else {
            (0, m.exps().to_vec())
        };
        DicksonSpec { n: self.n, a, exps }
    }

    fn slot_monomial(&self, exps: &[(usize, u32)]) -> Monomial {
        let mut v = vec![0u32; self.slots()];
        for &(slot, e) in exps {
            v[slot] += e;
        }
        Monomial::from_exps_unchecked(v.into())
    }

    /// `Sq^i` of a single generator, from the tables.
    pub fn generator_sq(&self, slot: usize, i: u64) -> Polynomial {
        let ns = self.slots();
        let mono = |exps: &[(usize, u32)]| Polynomial::from_monomial(self.slot_monomial(exps));
        if self.with_v && slot == 0 {
            return match sq_v_case(self.n + 1, i) {
                VCase::Identity => mono(&[(0, 1)]),
                VCase::TimesQ { s } => mono(&[(0, 1), (self.q_slot(s), 1)]),
                VCase::Square => mono(&[(0, 2)]),
                VCase::Zero => Polynomial::zero(ns),
            };
        }
        let s = slot - usize::from(self.with_v);
        match sq_q_case(self.n, s, i) {
            QCase::Single { r } => mono(&[(self.q_slot(r), 1)]),
            QCase::Product { r, t } => mono(&[(self.q_slot(r), 1), (self.q_slot(t), 1)]),
            QCase::Square => mono(&[(slot, 2)]),
            QCase::Zero => Polynomial::zero(ns),
        }
    }

    /// `[Sq^0(g^e), ..., Sq^top(g^e)]` for generator slot `g`.
    fn power_series(&self, slot: usize, e: u32, top: u64) -> Vec<Polynomial> {
        let ns = self.slots();
        let len = top as usize + 1;
        let mut acc = vec![Polynomial::zero(ns); len];
        acc[0] = Polynomial::one(ns);
        let w = self.weight(slot);
        let mut bit = 0u32;
        while (e >> bit) != 0 {
            if (e >> bit) & 1 == 1 {
                // Sq^t(g^{2^b}) = (Sq^{t/2^b} g)^{2^b}
                let step = 1u64 << bit;
                let mut factor = vec![Polynomial::zero(ns); len];
                let mut j = 0u64;
                while j * step <= top && j <= w {
                    let g = self.generator_sq(slot, j);
                    factor[(j * step) as usize] = g.pow(step);
                    j += 1;
                }
                acc = convolve(&acc, &factor, len);
            }
            bit += 1;
        }
        acc
    }

    /// `Sq^i` on a symbolic polynomial.
    pub fn sq(&self, i: u64, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.slots());
        if i == 0 {
            return p.clone();
        }
        let ns = self.slots();
        let mut memo: HashMap<(usize, u32), Vec<Polynomial>> = HashMap::new();
        let mut out = Polynomial::zero(ns);
        for m in p.terms() {
            if self.weighted_degree(m) < i {
                continue;
            }
            let len = i as usize + 1;
            let mut acc = vec![Polynomial::zero(ns); len];
            acc[0] = Polynomial::one(ns);
            for (slot, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let series = memo
                    .entry((slot, e))
                    .or_insert_with(|| self.power_series(slot, e, i));
                acc = convolve(&acc, series, len);
            }
            out = &out + &acc[i as usize];
        }
        out
    }

    pub fn chi_sq(&self, k: u64, p: &Polynomial) -> Polynomial {
        let mut table = vec![p.clone()];
        for m in 1..=k {
            let mut acc = Polynomial::zero(self.slots());
            for j in 1..=m {
                let inner = &table[(m - j) as usize];
                if !inner.is_zero() {
                    acc = &acc + &self.sq(j, inner);
                }
            }
            table.push(acc);
        }
        table.pop().expect("nonempty")
    }

    pub fn apply_word(&self, w: &OperatorWord, p: &Polynomial) -> Polynomial {
        let mut acc = p.clone();
        for &(kind, i) in w.factors().iter().rev() {
            acc = match kind {
                OpKind::Sq => self.sq(i as u64, &acc),
                OpKind::ChiSq => self.chi_sq(i as u64, &acc),
            };
        }
        acc
    }

    /// The generators as polynomials in `x`.
    pub fn generator_polys(&self) -> Result<Vec<Polynomial>, DicksonError> {
        let nv = self.nvars();
        let mut gens = Vec::with_capacity(self.slots());
        if self.with_v {
            gens.push(v_poly(self.n + 1)?);
        }
        for q in dickson_all(self.n)?.iter().take(self.n) {
            gens.push(q.embed(nv)?);
        }
        Ok(gens)
    }

    /// Expand a symbolic polynomial in `x1, ..., x_{nvars}`.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Polynomial, DicksonError> {
        Ok(substitute(p, &self.generator_polys()?)?)
    }
}

fn convolve(a: &[Polynomial], b: &[Polynomial], len: usize) -> Vec<Polynomial> {
    let ns = a[0].nvars();
    let mut out = vec![Polynomial::zero(ns); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}
