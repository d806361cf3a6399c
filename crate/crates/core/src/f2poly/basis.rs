use crate::bits::BitVector;

use super::{F2Error, Monomial, Polynomial};

/// `C(n, k)`; panics if the value does not fit in a `u64`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// All monomials of one degree in canonical order; the coordinate system for
/// a graded component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

/// Enumerate the degree-`d` monomials in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> GradedBasis {
    assert!(n >= 1, "a polynomial ring needs at least one variable");
    let mut monomials = Vec::with_capacity(component_dimension(n, d));
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, &mut monomials);
    GradedBasis {
        nvars: n,
        degree: d,
        monomials,
    }
}

fn fill(exps: &mut [u32], pos: usize, rem: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = rem;
        out.push(Monomial::from_exps_unchecked(exps.into()));
        return;
    }
    for e in (0..=rem).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, rem - e, out);
    }
    exps[pos] = 0;
}

/// `C(d + n - 1, n - 1)`.
pub(crate) fn component_dimension(n: usize, d: u32) -> usize {
    binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

/// Position of an exponent vector of total degree `d` within its graded
/// basis, computed without a lookup table.
pub(crate) fn rank_exponents(exps: &[u32], d: u32) -> usize {
    let n = exps.len();
    let mut rank = 0u64;
    let mut rem = d;
    for (j, &e) in exps.iter().enumerate().take(n - 1) {
        debug_assert!(e <= rem);
        if rem > e {
            let k = (n - 1 - j) as u64;
            rank += binomial((rem - e - 1) as u64 + k, k);
        }
        rem -= e;
    }
    rank as usize
}

impl GradedBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.nvars() != self.nvars || m.degree() != self.degree as u64 {
            return None;
        }
        Some(rank_exponents(m.exps(), self.degree))
    }

    fn check(&self, p: &Polynomial) -> Result<(), F2Error> {
        if p.nvars() != self.nvars {
            return Err(F2Error::NvarsMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        if !p.is_homogeneous() {
            return Err(F2Error::NotHomogeneous);
        }
        match p.degree() {
            Some(d) if d != self.degree as u64 => Err(F2Error::DegreeMismatch {
                expected: self.degree as u64,
                found: d,
            }),
            _ => Ok(()),
        }
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn to_vector(&self, p: &Polynomial) -> Result<BitVector, F2Error> {
        self.check(p)?;
        Ok(BitVector::from_ones(
            self.len(),
            p.terms()
                .iter()
                .map(|m| rank_exponents(m.exps(), self.degree)),
        ))
    }

    pub fn from_vector(&self, v: &BitVector) -> Result<Polynomial, F2Error> {
        if v.len() != self.len() {
            return Err(F2Error::LengthMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        let terms = v.iter_ones().map(|i| self.monomials[i].clone()).collect();
        Ok(Polynomial::from_sorted_unchecked(self.nvars, terms))
    }
}
