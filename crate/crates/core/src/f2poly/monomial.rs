use std::cmp::Ordering;
use std::fmt;

use super::F2Error;

/// A monomial `x1^e1 * ... * xn^en`, stored as its exponent vector.
///
/// Monomials are ordered by degree first; within one degree the
/// lexicographically *larger* exponent vector comes first, so that `x1^d` is
/// the smallest monomial of degree `d` and `xn^d` the largest.  This is the
/// order in which [`GradedBasis`](super::GradedBasis) lists its columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Result<Self, F2Error> {
        if exps.is_empty() {
            return Err(F2Error::NoVariables);
        }
        exps.iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e as u64))
            .ok_or(F2Error::ExponentOverflow)?;
        Ok(Monomial { exps: exps.into() })
    }

    pub(crate) fn from_exps_unchecked(exps: Box<[u32]>) -> Self {
        debug_assert!(!exps.is_empty());
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        assert!(nvars >= 1, "a polynomial ring needs at least one variable");
        Monomial {
            exps: vec![0; nvars].into(),
        }
    }

    /// The variable `x_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Result<Self, F2Error> {
        if nvars == 0 {
            return Err(F2Error::NoVariables);
        }
        if index >= nvars {
            return Err(F2Error::VariableOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Ok(Monomial { exps: exps.into() })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, F2Error> {
        if self.nvars() != other.nvars() {
            return Err(F2Error::NvarsMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<u32>>>()
            .ok_or(F2Error::ExponentOverflow)?;
        Ok(Monomial { exps: exps.into() })
    }

    /// Raise every exponent by the factor `k`.
    pub fn try_pow(&self, k: u32) -> Result<Monomial, F2Error> {
        let exps = self
            .exps
            .iter()
            .map(|e| e.checked_mul(k))
            .collect::<Option<Vec<u32>>>()
            .ok_or(F2Error::ExponentOverflow)?;
        Ok(Monomial { exps: exps.into() })
    }

    /// Pad (or keep) the exponent vector to `nvars` entries.  Fails if that
    /// would drop a variable with a nonzero exponent.
    pub fn embed(&self, nvars: usize) -> Result<Monomial, F2Error> {
        if nvars == 0 {
            return Err(F2Error::NoVariables);
        }
        if nvars < self.nvars() {
            if let Some(index) = self.exps[nvars..].iter().position(|&e| e != 0) {
                return Err(F2Error::VariableOutOfRange {
                    index: nvars + index,
                    nvars,
                });
            }
        }
        let mut exps = vec![0; nvars];
        let k = nvars.min(self.nvars());
        exps[..k].copy_from_slice(&self.exps[..k]);
        Ok(Monomial { exps: exps.into() })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "x{}^{}", k + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn order_is_graded_then_x1_heavy_first() {
        assert!(m(&[1, 0]) < m(&[0, 1]));
        assert!(m(&[0, 1]) < m(&[2, 0]));
        assert!(m(&[2, 0]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[0, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 1, 0]).to_string(), "x1^2*x2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }

    #[test]
    fn overflow_is_detected() {
        assert_eq!(
            m(&[u32::MAX]).try_mul(&m(&[1])),
            Err(F2Error::ExponentOverflow)
        );
        assert_eq!(
            m(&[u32::MAX / 2 + 1]).try_pow(2),
            Err(F2Error::ExponentOverflow)
        );
    }

    #[test]
    fn embed_pads_and_refuses_to_truncate() {
        assert_eq!(m(&[1, 2]).embed(3).unwrap(), m(&[1, 2, 0]));
        assert_eq!(m(&[1, 0, 0]).embed(1).unwrap(), m(&[1]));
        assert!(m(&[1, 0, 2]).embed(2).is_err());
    }
}
