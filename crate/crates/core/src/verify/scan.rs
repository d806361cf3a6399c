use serde::Serialize;

use super::{Verifier, VerifyError};
use crate::dickson::{a_form, enumerate_dickson_monomials};
use crate::hitsolver::HitAnswer;

/// Per-degree line of a scan.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub monomials: usize,
    pub hit: usize,
    pub not_hit: usize,
    pub ceiling: usize,
    /// Hit answers whose certificate failed recomputation.
    pub unverified: usize,
    pub columns: Option<usize>,
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub non_hit: Vec<Vec<u32>>,
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub d_max: u32,
    pub degrees: Vec<DegreeRow>,
    pub total: usize,
    pub hit: usize,
    pub not_hit: usize,
    pub ceiling: usize,
    pub unverified: usize,
    /// Every monomial answered Hit with a verified certificate.
    pub all_hit: bool,
    pub notes: Vec<String>,
}

impl Verifier {
    /// Decide every Dickson monomial `∏ Q_{n,s}^{e_s}` of degree
    /// `1..=d_max`.  Degrees past a solver ceiling are recorded and skipped.
    pub fn main_theorem_scan(&self, n: usize, d_max: u32) -> Result<ScanReport, VerifyError> {
        if n == 0 {
            return Err(VerifyError::OutOfRange("scan needs n >= 1".into()));
        }
        let mut degrees = Vec::new();
        for d in 1..=d_max {
            let specs = enumerate_dickson_monomials(n, d as u64);
            if specs.is_empty() {
                continue;
            }
            let (row, ms) = self.timed(|| {
                let mut row = DegreeRow {
                    degree: d,
                    monomials: specs.len(),
                    hit: 0,
                    not_hit: 0,
                    ceiling: 0,
                    unverified: 0,
                    columns: None,
                    rank: None,
                    non_hit: Vec::new(),
                    timing_ms: None,
                };
                match self.solver().hit_space_basis(n, d) {
                    Ok(b) => {
                        row.columns = Some(b.columns());
                        row.rank = Some(b.rank());
                    }
                    Err(e) if e.is_ceiling() => {
                        row.ceiling = specs.len();
                        return Ok(row);
                    }
                    Err(e) => return Err(e.into()),
                }
                for spec in &specs {
                    let f = a_form(spec)?;
                    match self.solver().is_hit(&f)? {
                        HitAnswer::Hit(c) => {
                            if c.verify(&f) {
                                row.hit += 1;
                            } else {
                                row.unverified += 1;
                            }
                        }
                        HitAnswer::NotHit(_) => {
                            row.not_hit += 1;
                            row.non_hit.push(spec.exps.clone());
                        }
                    }
                }
                Ok(row)
            })?;
            degrees.push(DegreeRow {
                timing_ms: ms,
                ..row
            });
        }
        let sum = |f: fn(&DegreeRow) -> usize| degrees.iter().map(f).sum::<usize>();
        let (total, hit, not_hit, ceiling, unverified) = (
            sum(|r| r.monomials),
            sum(|r| r.hit),
            sum(|r| r.not_hit),
            sum(|r| r.ceiling),
            sum(|r| r.unverified),
        );
        Ok(ScanReport {
            n,
            d_max,
            all_hit: hit == total,
            degrees,
            total,
            hit,
            not_hit,
            ceiling,
            unverified,
            notes: vec![format!(
                "empirical coverage: every Dickson monomial in {n} variables up to degree {d_max}"
            )],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scans() {
        let v = Verifier::default();
        let r = v.main_theorem_scan(3, 4).unwrap();
        assert!(r.all_hit);
        assert_eq!(r.total, 1);
        let r = v.main_theorem_scan(2, 3).unwrap();
        assert!(!r.all_hit);
        assert_eq!(r.degrees[0].non_hit, vec![vec![0, 1]]);
        let r = v.main_theorem_scan(4, 8).unwrap();
        assert!(r.all_hit);
        assert_eq!(r.total, 1);
    }
}
