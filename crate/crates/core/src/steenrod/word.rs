use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{chi_sq, sq};
use crate::f2poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    Sq,
    ChiSq,
}

/// A composite such as `Sq^8 χ(Sq^4)`.  The first factor is outermost: it is
/// applied last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorWord {
    factors: Vec<(OpKind, u32)>,
}

impl OperatorWord {
    pub fn new(factors: Vec<(OpKind, u32)>) -> Self {
        OperatorWord { factors }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(OpKind, u32)] {
        &self.factors
    }

    /// Total degree shift.
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(_, i)| i as u64).sum()
    }

    /// Evaluate right to left.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut acc = p.clone();
        for &(kind, i) in self.factors.iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = match kind {
                OpKind::Sq => sq(i, &acc),
                OpKind::ChiSq => chi_sq(i, &acc),
            };
        }
        acc
    }
}

/// `apply_word(w, p)`.
pub fn apply_word(w: &OperatorWord, p: &Polynomial) -> Polynomial {
    w.apply(p)
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (kind, i)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            match kind {
                OpKind::Sq => write!(f, "Sq {i}")?,
                OpKind::ChiSq => write!(f, "Chi {i}")?,
            }
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad operator word factor {0:?}; expected `Sq <n>` or `Chi <n>`")]
pub struct WordParseError(pub String);

/// Parses `[Sq 8, Chi 4]`; the brackets are optional.
impl FromStr for OperatorWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body);
        let mut factors = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let mut it = part.split_whitespace();
            let kind = match it.next() {
                Some("Sq") => OpKind::Sq,
                Some("Chi") => OpKind::ChiSq,
                _ => return Err(WordParseError(part.to_string())),
            };
            let i = it
                .next()
                .and_then(|t| t.parse::<u32>().ok())
                .ok_or_else(|| WordParseError(part.to_string()))?;
            if it.next().is_some() {
                return Err(WordParseError(part.to_string()));
            }
            factors.push((kind, i));
        }
        Ok(OperatorWord { factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_identity() {
        let p = Polynomial::var(2, 1).unwrap();
        assert_eq!(OperatorWord::identity().apply(&p), p);
    }

    #[test]
    fn right_to_left() {
        let x = Polynomial::var(1, 0).unwrap();
        // Sq^2 Sq^1 x = Sq^2 x^2 = x^4, while Sq^1 Sq^2 x = 0
        let w: OperatorWord = "[Sq 2, Sq 1]".parse().unwrap();
        assert_eq!(w.apply(&x), x.pow(4));
        let w: OperatorWord = "[Sq 1, Sq 2]".parse().unwrap();
        assert!(w.apply(&x).is_zero());
        assert_eq!(w.degree(), 3);
    }

    #[test]
    fn parse_and_display() {
        let w: OperatorWord = "Sq 8, Chi 4".parse().unwrap();
        assert_eq!(w.factors(), &[(OpKind::Sq, 8), (OpKind::ChiSq, 4)]);
        assert_eq!(w.to_string(), "[Sq 8, Chi 4]");
        assert_eq!(w.to_string().parse::<OperatorWord>().unwrap(), w);
        assert!("Sq x".parse::<OperatorWord>().is_err());
        assert!("Foo 1".parse::<OperatorWord>().is_err());
    }
}
