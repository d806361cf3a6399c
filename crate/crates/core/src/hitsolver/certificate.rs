use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::f2poly::Polynomial;
use crate::steenrod::sq;

/// A witness `f = Σ Sq^{i}(u_i)` with every `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitCertificate {
    nvars: usize,
    terms: Vec<(u32, Polynomial)>,
}

impl HitCertificate {
    pub fn new(nvars: usize) -> Self {
        HitCertificate {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(u32, Polynomial)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Append `(i, u)`.  Terms that vanish for degree reasons are dropped.
    pub fn push(&mut self, i: u32, u: Polynomial) {
        assert_eq!(u.nvars(), self.nvars, "certificate variable count");
        if u.is_zero() {
            return;
        }
        if u.max_degree().is_some_and(|d| (i as u64) > d) {
            return;
        }
        self.terms.push((i, u));
    }

    pub fn extend(&mut self, other: HitCertificate) {
        for (i, u) in other.terms {
            self.push(i, u);
        }
    }

    /// Multiply every preimage by `w`.  Only valid as a certificate for
    /// `w·f` when `Sq^j(w) = 0` for every `1 <= j <= max i`; callers check
    /// that.
    pub fn scaled(&self, w: &Polynomial) -> HitCertificate {
        let mut out = HitCertificate::new(w.nvars());
        for (i, u) in &self.terms {
            out.push(
                *i,
                w * &u.embed(w.nvars()).expect("embedding into more variables"),
            );
        }
        out
    }

    /// `Σ Sq^{i}(u_i)`, recomputed from scratch.
    pub fn evaluate(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars);
        for (i, u) in &self.terms {
            acc = &acc + &sq(*i, u);
        }
        acc
    }

    /// `f == Σ Sq^{i}(u_i)` and every `i >= 1`.
    pub fn verify(&self, f: &Polynomial) -> bool {
        f.nvars() == self.nvars && self.terms.iter().all(|(i, _)| *i >= 1) && self.evaluate() == *f
    }
}

/// `verify_certificate(f, cert)`.
pub fn verify_certificate(f: &Polynomial, cert: &HitCertificate) -> bool {
    cert.verify(f)
}

impl Serialize for HitCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            i: u32,
            u: &'a str,
        }
        let texts: Vec<String> = self.terms.iter().map(|(_, u)| u.to_string()).collect();
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .zip(&texts)
            .map(|((i, _), u)| Term { i: *i, u })
            .collect();
        let mut st = serializer.serialize_struct("HitCertificate", 2)?;
        st.serialize_field("nvars", &self.nvars)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_certificates() {
        let x1 = Polynomial::var(1, 0).unwrap();
        let mut c = HitCertificate::new(1);
        c.push(1, x1.clone());
        assert!(verify_certificate(&x1.square(), &c));

        let x = |k| Polynomial::var(2, k).unwrap();
        let mut c = HitCertificate::new(2);
        c.push(1, x(1));
        assert!(!c.verify(&x(0).square()));
        assert!(HitCertificate::new(3).verify(&Polynomial::zero(3)));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x1 = Polynomial::var(1, 0).unwrap();
        let mut c = HitCertificate::new(1);
        c.push(2, x1.clone());
        c.push(1, Polynomial::zero(1));
        assert!(c.is_empty());
    }

    #[test]
    fn json_shape() {
        let x1 = Polynomial::var(1, 0).unwrap();
        let mut c = HitCertificate::new(1);
        c.push(1, x1);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"nvars":1,"terms":[{"i":1,"u":"x1"}]}"#
        );
    }
}
