use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use rustc_hash::FxHashSet;

use super::{F2Error, Monomial};

/// An element of `F2[x1, ..., xn]`.
///
/// The support is kept sorted in the canonical monomial order without
/// duplicates, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "a polynomial ring needs at least one variable");
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_monomial(Monomial::one(nvars))
    }

    /// The variable `x_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Result<Self, F2Error> {
        Monomial::var(nvars, index).map(Self::from_monomial)
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial {
            nvars: m.nvars(),
            terms: vec![m],
        }
    }

    /// Sum (mod 2) of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(
        nvars: usize,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, F2Error> {
        if nvars == 0 {
            return Err(F2Error::NoVariables);
        }
        let mut set = FxHashSet::default();
        for m in monomials {
            if m.nvars() != nvars {
                return Err(F2Error::NvarsMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            toggle(&mut set, m);
        }
        Ok(Self::from_set(nvars, set))
    }

    pub(crate) fn from_set(nvars: usize, set: FxHashSet<Monomial>) -> Self {
        let mut terms: Vec<Monomial> = set.into_iter().collect();
        terms.sort_unstable();
        Polynomial { nvars, terms }
    }

    /// Build from terms already sorted and distinct.
    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Support in canonical (ascending) order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    /// True for the zero polynomial and for polynomials whose terms share one
    /// degree.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.degree();
                self.terms.iter().all(|m| m.degree() == d)
            }
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u64> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            Some(self.terms[0].degree())
        }
    }

    /// Largest degree in the support.  Terms are sorted by degree.
    pub fn max_degree(&self) -> Option<u64> {
        self.terms.last().map(Monomial::degree)
    }

    /// Split into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u64, Polynomial> {
        let mut parts: BTreeMap<u64, Vec<Monomial>> = BTreeMap::new();
        for m in &self.terms {
            parts.entry(m.degree()).or_default().push(m.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Polynomial::from_sorted_unchecked(self.nvars, terms)))
            .collect()
    }

    fn check_nvars(&self, other: &Polynomial) -> Result<(), F2Error> {
        if self.nvars != other.nvars {
            Err(F2Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }

    /// Sum over F2: the symmetric difference of supports.
    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, F2Error> {
        self.check_nvars(other)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Polynomial::from_sorted_unchecked(self.nvars, out))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, F2Error> {
        self.check_nvars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let mut set = FxHashSet::default();
        set.reserve(self.len().saturating_mul(other.len()).min(1 << 22));
        for a in &self.terms {
            for b in &other.terms {
                toggle(&mut set, a.try_mul(b)?);
            }
        }
        Ok(Polynomial::from_set(self.nvars, set))
    }

    /// Frobenius: `p^2` squares every monomial and nothing cancels.
    pub fn square(&self) -> Polynomial {
        self.try_frobenius(2)
            .expect("exponent overflow while squaring")
    }

    fn try_frobenius(&self, k: u32) -> Result<Polynomial, F2Error> {
        // Scaling every exponent by k preserves the canonical order.
        let terms = self
            .terms
            .iter()
            .map(|m| m.try_pow(k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_sorted_unchecked(self.nvars, terms))
    }

    pub fn try_pow(&self, mut e: u64) -> Result<Polynomial, F2Error> {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        // strip powers of two with Frobenius first
        let tz = e.trailing_zeros();
        if e != 0 && tz > 0 {
            if tz >= 32 {
                return Err(F2Error::ExponentOverflow);
            }
            base = base.try_frobenius(1 << tz)?;
            e >>= tz;
        }
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_frobenius(2)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        self.try_pow(e).expect("exponent overflow")
    }

    /// Reinterpret in `nvars` variables by padding exponent vectors.
    pub fn embed(&self, nvars: usize) -> Result<Polynomial, F2Error> {
        if nvars == 0 {
            return Err(F2Error::NoVariables);
        }
        let terms = self
            .terms
            .iter()
            .map(|m| m.embed(nvars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_sorted_unchecked(nvars, terms))
    }
}

pub(crate) fn toggle(set: &mut FxHashSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// On a variable-count mismatch; use [`Polynomial::try_add`] to handle it.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// On a variable-count mismatch or exponent overflow; use
    /// [`Polynomial::try_mul`] to handle either.
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

/// Canonical text: terms joined by ` + ` in ascending monomial order, `0` for
/// the zero polynomial.  The output re-parses with the expression grammar.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::var(n, k - 1).unwrap()
    }

    #[test]
    fn characteristic_two() {
        let x1 = x(1, 1);
        assert!((&x1 + &x1).is_zero());
        let p = &x(2, 1) + &x(2, 2);
        assert_eq!(&p + &x(2, 2), x(2, 1));
    }

    #[test]
    fn frobenius() {
        let p = &x(2, 1) + &x(2, 2);
        assert_eq!(&p * &p, &x(2, 1).square() + &x(2, 2).square());
        assert_eq!(p.pow(2), &p * &p);
    }

    #[test]
    fn product_expansion() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let lhs = &(&x1 * &x2) * &(&x1 + &x2);
        assert_eq!(lhs.to_string(), "x1^2*x2 + x1*x2^2");
        let one = Polynomial::one(2);
        assert_eq!(&one * &lhs, lhs);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = &(&x(3, 1) + &x(3, 2)) + &(&x(3, 3) * &x(3, 1));
        let mut acc = Polynomial::one(3);
        for e in 0..7u64 {
            assert_eq!(p.pow(e), acc, "e = {e}");
            acc = &acc * &p;
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        assert_eq!(
            x(1, 1).try_add(&x(2, 1)),
            Err(F2Error::NvarsMismatch { left: 1, right: 2 })
        );
        assert!(x(1, 1).try_mul(&x(2, 1)).is_err());
    }

    #[test]
    fn homogeneity() {
        let p = &x(2, 1) + &x(2, 2).square();
        assert!(!p.is_homogeneous());
        assert_eq!(p.degree(), None);
        assert_eq!(p.max_degree(), Some(2));
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], x(2, 1));
        assert!(Polynomial::zero(3).is_homogeneous());
    }
}
