//! Deciding whether a polynomial is hit.
//!
//! The degree-`d` hit subspace is spanned by `Sq^i(m)` over monomials `m` of
//! degree `d - i` with `1 <= i <= d/2` (larger `i` vanish by instability).
//! Because every `Sq^i` is a sum of composites whose outermost factor is some
//! `Sq^{2^k}` with `2^k <= i`, the images of the `Sq^{2^k}` alone already span
//! the same subspace, even under a bound `i <= K`.  That is the default
//! generator set; [`GeneratorMode::AllSquares`] uses every `i`.

mod cache;
mod certificate;
mod echelon;

pub use cache::{BasisCache, CacheError, CacheInfo, FORMAT_VERSION, ORDER_TAG};
pub use certificate::{verify_certificate, HitCertificate};
pub use echelon::{generator_degrees, BasisRow, ReducedBasis};

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitVector;
use crate::f2poly::{monomials_of_degree, F2Error, Polynomial};
use echelon::{effective_bound, Reduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    /// `Sq^{2^k}` images only; spans the same subspace.
    PowersOfTwo,
    /// `Sq^i` images for every admissible `i`.
    AllSquares,
}

/// Resource ceilings and generator choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_columns: usize,
    pub max_generators: usize,
    pub max_degree: u32,
    pub generators: GeneratorMode,
    /// Persist bases here when set.
    pub cache_dir: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_columns: 20_000,
            max_generators: 2_000_000,
            max_degree: 256,
            generators: GeneratorMode::PowersOfTwo,
            cache_dir: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("resource ceiling: {resource} would be {requested}, limit is {limit}")]
    Ceiling {
        resource: &'static str,
        limit: u64,
        requested: u64,
    },
    #[error(transparent)]
    Poly(#[from] F2Error),
    #[error("basis cache: {0}")]
    Cache(#[from] CacheError),
}

impl SolverError {
    pub fn is_ceiling(&self) -> bool {
        matches!(self, SolverError::Ceiling { .. })
    }
}

/// Coordinates of `f` left over after full reduction against the hit space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonHitWitness {
    pub degree: u32,
    pub residual: BitVector,
    /// The residual written back as a polynomial.
    pub residual_poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HitAnswer {
    Hit(HitCertificate),
    NotHit(NonHitWitness),
}

impl HitAnswer {
    pub fn is_hit(&self) -> bool {
        matches!(self, HitAnswer::Hit(_))
    }

    pub fn certificate(&self) -> Option<&HitCertificate> {
        match self {
            HitAnswer::Hit(c) => Some(c),
            HitAnswer::NotHit(_) => None,
        }
    }
}

type BasisKey = (usize, u32, u32, GeneratorMode);

/// Hit-problem solver with an in-memory basis cache (and an optional disk
/// cache).  Shareable across threads.
#[derive(Debug, Default)]
pub struct HitSolver {
    config: SolverConfig,
    bases: Mutex<HashMap<BasisKey, Arc<ReducedBasis>>>,
}

impl HitSolver {
    pub fn new(config: SolverConfig) -> Self {
        HitSolver {
            config,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// The full degree-`d` hit space in `n` variables.
    pub fn hit_space_basis(&self, n: usize, d: u32) -> Result<Arc<ReducedBasis>, SolverError> {
        self.hit_space_basis_bounded(n, d, u32::MAX)
    }

    /// The span of the `Sq^i` images with `i <= max_sq` only.
    pub fn hit_space_basis_bounded(
        &self,
        n: usize,
        d: u32,
        max_sq: u32,
    ) -> Result<Arc<ReducedBasis>, SolverError> {
        if n == 0 {
            return Err(F2Error::NoVariables.into());
        }
        let mode = self.config.generators;
        let bound = effective_bound(d, max_sq, mode);
        let key = (n, d, bound, mode);
        if let Some(b) = self.bases.lock().expect("basis cache").get(&key) {
            return Ok(b.clone());
        }
        let disk = self.config.cache_dir.as_ref().map(BasisCache::new);
        let loaded = match &disk {
            Some(c) => c.load(n, d, bound, mode)?,
            None => None,
        };
        let basis = match loaded {
            Some(b) => b,
            None => {
                let b = ReducedBasis::build(n, d, bound, &self.config)?;
                if let Some(c) = &disk {
                    c.store(&b)?;
                }
                b
            }
        };
        let basis = Arc::new(basis);
        self.bases
            .lock()
            .expect("basis cache")
            .insert(key, basis.clone());
        Ok(basis)
    }

    /// Decide whether `f` is hit.  Non-homogeneous input is hit exactly when
    /// every homogeneous part is.
    pub fn is_hit(&self, f: &Polynomial) -> Result<HitAnswer, SolverError> {
        self.is_hit_bounded(f, u32::MAX)
    }

    /// As [`is_hit`](Self::is_hit), allowing only `Sq^i` with `i <= max_sq`.
    pub fn is_hit_bounded(&self, f: &Polynomial, max_sq: u32) -> Result<HitAnswer, SolverError> {
        let mut cert = HitCertificate::new(f.nvars());
        for (d, part) in f.homogeneous_parts() {
            let d = u32::try_from(d).map_err(|_| SolverError::Ceiling {
                resource: "degree",
                limit: self.config.max_degree as u64,
                requested: d,
            })?;
            match self.is_hit_homogeneous(&part, d, max_sq)? {
                HitAnswer::Hit(c) => cert.extend(c),
                no => return Ok(no),
            }
        }
        Ok(HitAnswer::Hit(cert))
    }

    fn is_hit_homogeneous(
        &self,
        f: &Polynomial,
        d: u32,
        max_sq: u32,
    ) -> Result<HitAnswer, SolverError> {
        let n = f.nvars();
        let basis = self.hit_space_basis_bounded(n, d, max_sq)?;
        let coords = monomials_of_degree(n, d).to_vector(f)?;
        match basis.reduce(&coords) {
            Reduction::InSpan(pre) => Ok(HitAnswer::Hit(basis.certificate(&pre))),
            Reduction::Residual(residual) => {
                let residual_poly = monomials_of_degree(n, d).from_vector(&residual)?;
                Ok(HitAnswer::NotHit(NonHitWitness {
                    degree: d,
                    residual,
                    residual_poly,
                }))
            }
        }
    }

    /// Drop all in-memory bases.
    pub fn clear_memory(&self) {
        self.bases.lock().expect("basis cache").clear();
    }
}
