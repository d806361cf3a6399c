//! Mechanical checks: the Steenrod-square tables for `V_n` and `Q_{n,s}`,
//! the identity `V_{n+1} = Σ_{s=1..n} Sq^1(Q_{n,s} x_{n+1}^{2^s-1})`, the
//! reduction steps showing that the Dickson algebra is hit, and degree scans.
//!
//! Every check returns a [`ReplayReport`].  Equalities are compared exactly;
//! congruences "modulo hits" are accepted only with a certificate for the
//! difference that has been recomputed from scratch.

mod cases;
mod report;
mod scan;
mod suites;

pub use cases::{case_grid, classify, replay_case, CaseId};
pub use report::{abbreviate, CertificateSummary, ReplayReport, Status, Step};
pub use scan::{DegreeRow, ScanReport};
pub use suites::{all_passed, random_homogeneous, random_polynomial, Suite};

use std::time::Instant;

use serde_json::json;
use thiserror::Error;

use crate::dickson::coords::{sq_q_case, sq_v_case, QCase, VCase};
use crate::dickson::{dickson_q, v_poly, DicksonError};
use crate::f2poly::{F2Error, Polynomial};
use crate::hitsolver::{HitAnswer, HitCertificate, HitSolver, SolverConfig, SolverError};
use crate::steenrod::{apply_word, chi_sq, sq, OpKind, OperatorWord};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Dickson(#[from] DicksonError),
    #[error(transparent)]
    Poly(#[from] F2Error),
    #[error(transparent)]
    Solver(SolverError),
    #[error("{case} does not apply to {params}: {reason}")]
    NotApplicable {
        case: String,
        params: String,
        reason: String,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

impl From<SolverError> for VerifyError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Poly(p) => VerifyError::Poly(p),
            other => VerifyError::Solver(other),
        }
    }
}

/// Runs checks against one solver.
#[derive(Debug)]
pub struct Verifier {
    solver: HitSolver,
    timings: bool,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new(HitSolver::default())
    }
}

impl Verifier {
    pub fn new(solver: HitSolver) -> Self {
        Verifier {
            solver,
            timings: false,
        }
    }

    pub fn with_config(config: SolverConfig) -> Self {
        Verifier::new(HitSolver::new(config))
    }

    /// Record wall time in reports.  Off by default.
    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }

    pub fn timings(&self) -> bool {
        self.timings
    }

    pub fn solver(&self) -> &HitSolver {
        &self.solver
    }

    pub(crate) fn timed<T>(
        &self,
        f: impl FnOnce() -> Result<T, VerifyError>,
    ) -> Result<(T, Option<f64>), VerifyError> {
        let start = Instant::now();
        let out = f()?;
        let ms = self
            .timings
            .then(|| (start.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3);
        Ok((out, ms))
    }

    fn finish(&self, report: ReplayReport, ms: Option<f64>) -> ReplayReport {
        ReplayReport {
            timing_ms: ms,
            ..report
        }
    }

    /// `lhs == rhs` exactly.
    pub fn exact_step(&self, name: &str, lhs: &Polynomial, rhs: &Polynomial) -> Step {
        let diff = lhs + rhs;
        if diff.is_zero() {
            Step::new(name, Status::ExactEqual)
        } else {
            let mut s = Step::new(name, Status::Failed);
            s.difference = Some(abbreviate(&diff));
            s
        }
    }

    /// `lhs ≡ rhs` modulo hits.  An explicit certificate for the difference
    /// is tried first; the solver is the fallback.
    pub fn modulo_hit_step(
        &self,
        name: &str,
        lhs: &Polynomial,
        rhs: &Polynomial,
        explicit: Option<HitCertificate>,
    ) -> Result<Step, VerifyError> {
        let diff = lhs.try_add(rhs)?;
        if diff.is_zero() {
            return Ok(Step::new(name, Status::ExactEqual));
        }
        if let Some(cert) = explicit {
            if cert.verify(&diff) {
                let mut s = Step::new(name, Status::EqualModuloHit);
                s.certificate = Some(CertificateSummary::new("explicit", &cert, true));
                return Ok(s);
            }
        }
        let mut s = self.hit_step(name, &diff, u32::MAX)?;
        if s.status == Status::Holds {
            s.status = Status::EqualModuloHit;
        }
        Ok(s)
    }

    /// `f` lies in the span of the `Sq^i` images with `i <= max_sq`.
    pub fn hit_step(&self, name: &str, f: &Polynomial, max_sq: u32) -> Result<Step, VerifyError> {
        match self.solver.is_hit_bounded(f, max_sq) {
            Ok(HitAnswer::Hit(cert)) => {
                let ok = cert.verify(f) && cert.terms().iter().all(|(i, _)| *i <= max_sq);
                let mut s = Step::new(name, if ok { Status::Holds } else { Status::Failed });
                s.certificate = Some(CertificateSummary::new("solver", &cert, ok));
                Ok(s)
            }
            Ok(HitAnswer::NotHit(w)) => {
                let mut s = Step::new(name, Status::Failed).detail("not hit");
                s.difference = Some(abbreviate(&w.residual_poly));
                Ok(s)
            }
            Err(e) if e.is_ceiling() => Ok(Step::new(name, Status::Ceiling).detail(e.to_string())),
            Err(e) => Err(e.into()),
        }
    }

    /// A certificate built by hand, checked against `f`.
    pub fn certificate_step(&self, name: &str, f: &Polynomial, cert: &HitCertificate) -> Step {
        let ok = cert.verify(f);
        let mut s = Step::new(name, if ok { Status::Holds } else { Status::Failed });
        s.certificate = Some(CertificateSummary::new("explicit", cert, ok));
        if !ok {
            s.difference = Some(abbreviate(&(f + &cert.evaluate())));
        }
        s
    }

    pub fn zero_step(&self, name: &str, p: &Polynomial) -> Step {
        if p.is_zero() {
            Step::new(name, Status::Holds)
        } else {
            let mut s = Step::new(name, Status::Failed);
            s.difference = Some(abbreviate(p));
            s
        }
    }

    /// `Sq^i V_n` against the table value.
    pub fn check_sq_on_v(&self, n: usize, i: u64) -> Result<ReplayReport, VerifyError> {
        if !(1..=5).contains(&n) || i > 1 << (n - 1) {
            return Err(VerifyError::OutOfRange(format!("Sq^{i} V_{n}")));
        }
        let (report, ms) = self.timed(|| {
            let v = v_poly(n)?;
            let case = sq_v_case(n, i);
            let (predicted, label) = match case {
                VCase::Identity => (v.clone(), "V_n".to_string()),
                VCase::TimesQ { s } => (
                    v.try_mul(&dickson_q(n - 1, s)?.embed(n)?)?,
                    format!("V_n Q_{{n-1,{s}}}"),
                ),
                VCase::Square => (v.square(), "V_n^2".to_string()),
                VCase::Zero => (Polynomial::zero(n), "0".to_string()),
            };
            let computed = sq(i as u32, &v);
            let step = self
                .exact_step("table", &computed, &predicted)
                .detail(label);
            Ok(ReplayReport::new(
                "sq-on-V",
                json!({"n": n, "i": i}),
                vec![step],
            ))
        })?;
        Ok(self.finish(report, ms))
    }

    /// `Sq^i Q_{n,s}` against the table value.
    pub fn check_sq_on_q(&self, n: usize, s: usize, i: u64) -> Result<ReplayReport, VerifyError> {
        if !(1..=5).contains(&n) || s >= n || i > (1 << n) - (1 << s) {
            return Err(VerifyError::OutOfRange(format!("Sq^{i} Q_{{{n},{s}}}")));
        }
        let (report, ms) = self.timed(|| {
            let q = |r: usize| dickson_q(n, r);
            let (predicted, label) = match sq_q_case(n, s, i) {
                QCase::Single { r } => (q(r)?, format!("Q_{{n,{r}}}")),
                QCase::Product { r, t } => {
                    (q(r)?.try_mul(&q(t)?)?, format!("Q_{{n,{r}}} Q_{{n,{t}}}"))
                }
                QCase::Square => (q(s)?.square(), "Q_{n,s}^2".to_string()),
                QCase::Zero => (Polynomial::zero(n), "0".to_string()),
            };
            let computed = sq(i as u32, &q(s)?);
            let step = self
                .exact_step("table", &computed, &predicted)
                .detail(label);
            Ok(ReplayReport::new(
                "sq-on-Q",
                json!({"n": n, "s": s, "i": i}),
                vec![step],
            ))
        })?;
        Ok(self.finish(report, ms))
    }

    /// `V_{n+1} = Σ_{s=1..n} Sq^1(Q_{n,s} x_{n+1}^{2^s-1})`.
    pub fn check_v_identity(&self, n: usize) -> Result<ReplayReport, VerifyError> {
        if !(1..=4).contains(&n) {
            return Err(VerifyError::OutOfRange(format!("V identity for n={n}")));
        }
        let (report, ms) = self.timed(|| {
            let lhs = v_poly(n + 1)?;
            let rhs = sq(1, &w_sum(n)?);
            let step = self.exact_step("V_{n+1} = Sq^1(W)", &lhs, &rhs);
            Ok(ReplayReport::new("v-identity", json!({"n": n}), vec![step]))
        })?;
        Ok(self.finish(report, ms))
    }

    /// `χ(Sq^{2^n-4}) f` against `Sq^{2^{n-1}} ⋯ Sq^8 χ(Sq^4) f`, exactly
    /// and, failing that, modulo hits.
    pub fn check_davis_composite(
        &self,
        n: usize,
        f: &Polynomial,
    ) -> Result<ReplayReport, VerifyError> {
        if !(3..=6).contains(&n) {
            return Err(VerifyError::OutOfRange(format!("composite for n={n}")));
        }
        let (report, ms) = self.timed(|| {
            let word = davis_word(n);
            let lhs = chi_sq((1 << n) - 4, f);
            let rhs = apply_word(&word, f);
            let step = self
                .modulo_hit_step("chi(Sq^{2^n-4}) vs composite", &lhs, &rhs, None)?
                .detail(word.to_string());
            Ok(ReplayReport::new(
                "davis",
                json!({"n": n, "nvars": f.nvars(), "f": f.to_string()}),
                vec![step],
            ))
        })?;
        Ok(self.finish(report, ms))
    }

    /// `Sq^i V_4^a`: zero for `i <= 3`, and for `i = 4` when `a` is even;
    /// `V_4^a Q_{3,2}` for `i = 4`, `a` odd.
    pub fn check_sq_vanishing_on_v4_powers(
        &self,
        a: u32,
        i: u32,
    ) -> Result<ReplayReport, VerifyError> {
        if !(1..=6).contains(&a) || !(1..=4).contains(&i) {
            return Err(VerifyError::OutOfRange(format!("Sq^{i} V_4^{a}")));
        }
        let (report, ms) = self.timed(|| {
            let va = v_poly(4)?.pow(a as u64);
            let computed = sq(i, &va);
            let step = if i == 4 && a % 2 == 1 {
                let predicted = va.try_mul(&dickson_q(3, 2)?.embed(4)?)?;
                self.exact_step("Sq^4 V_4^a = V_4^a Q_{3,2}", &computed, &predicted)
            } else {
                self.exact_step("Sq^i V_4^a = 0", &computed, &Polynomial::zero(4))
            };
            Ok(ReplayReport::new(
                "v4-power-vanishing",
                json!({"a": a, "i": i}),
                vec![step],
            ))
        })?;
        Ok(self.finish(report, ms))
    }
}

/// `Σ_{s=1..n} Q_{n,s} x_{n+1}^{2^s-1}` in `n + 1` variables.
pub fn w_sum(n: usize) -> Result<Polynomial, VerifyError> {
    let x = Polynomial::var(n + 1, n)?;
    let mut acc = Polynomial::zero(n + 1);
    for s in 1..=n {
        let q = dickson_q(n, s)?.embed(n + 1)?;
        acc = acc.try_add(&q.try_mul(&x.pow((1u64 << s) - 1))?)?;
    }
    Ok(acc)
}

/// `[Sq 2^{n-1}, ..., Sq 8, Chi 4]`.
pub fn davis_word(n: usize) -> OperatorWord {
    let mut factors: Vec<(OpKind, u32)> = (3..n).rev().map(|k| (OpKind::Sq, 1u32 << k)).collect();
    factors.push((OpKind::ChiSq, 4));
    OperatorWord::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let v = Verifier::default();
        for (n, i) in [(2, 1), (4, 3), (3, 4)] {
            assert_eq!(v.check_sq_on_v(n, i).unwrap().status, Status::ExactEqual);
        }
        let r = v.check_sq_on_q(3, 1, 4).unwrap();
        assert_eq!(r.status, Status::ExactEqual);
        assert_eq!(r.steps[0].detail.as_deref(), Some("Q_{n,1} Q_{n,2}"));
        assert!(v.check_sq_on_q(2, 2, 0).is_err());
    }

    #[test]
    fn v_identity_small() {
        let v = Verifier::default();
        for n in 2..=3 {
            assert_eq!(v.check_v_identity(n).unwrap().status, Status::ExactEqual);
        }
    }

    #[test]
    fn v_identity_fails_for_one_variable() {
        // Sq^1(Q_{1,1} x2) = x2^2 misses the x1*x2 term of V_2
        let r = Verifier::default().check_v_identity(1).unwrap();
        assert_eq!(r.status, Status::Failed);
        assert_eq!(r.steps[0].difference.as_deref(), Some("x1*x2"));
    }

    #[test]
    fn vanishing_on_v4_powers() {
        let v = Verifier::default();
        for a in 1..=3 {
            for i in 1..=4 {
                assert!(v.check_sq_vanishing_on_v4_powers(a, i).unwrap().passed);
            }
        }
    }

    #[test]
    fn davis_word_shape() {
        assert_eq!(davis_word(4).to_string(), "[Sq 8, Chi 4]");
        assert_eq!(davis_word(5).to_string(), "[Sq 16, Sq 8, Chi 4]");
        assert_eq!(davis_word(5).degree(), 28);
        let v = Verifier::default();
        let r = v.check_davis_composite(4, &Polynomial::zero(1)).unwrap();
        assert_eq!(r.status, Status::ExactEqual);
    }

    #[test]
    fn reports_have_no_timing_by_default() {
        let v = Verifier::default();
        let r = v.check_v_identity(2).unwrap();
        assert!(r.timing_ms.is_none());
        let r = Verifier::default()
            .with_timings(true)
            .check_v_identity(2)
            .unwrap();
        assert!(r.timing_ms.is_some());
    }
}
