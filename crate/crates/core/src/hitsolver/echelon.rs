//! Incremental Gauss-Jordan elimination of the generator images
//! `Sq^i(m)` with preimage tracking.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{GeneratorMode, SolverConfig, SolverError};
use crate::bits::BitVector;
use crate::f2poly::basis::{component_dimension, rank_exponents};
use crate::f2poly::{monomials_of_degree, Monomial, Polynomial};
use crate::hitsolver::HitCertificate;
use crate::steenrod::for_each_sq_term;

const IMAGE_CHUNK: usize = 4096;

/// One row of the reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisRow {
    pub pivot: usize,
    pub bits: BitVector,
    /// Which kept generators sum to this row.
    pub preimage: BitVector,
}

/// The degree-`d` hit subspace in reduced row-echelon form.
///
/// Rows are sorted by pivot and every pivot column is zero in every other
/// row.  `generators` lists the generator images that raised the rank, in the
/// order they were met; row preimages are combinations of those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    pub(crate) nvars: usize,
    pub(crate) degree: u32,
    pub(crate) max_sq: u32,
    pub(crate) mode: GeneratorMode,
    pub(crate) columns: usize,
    pub(crate) generators: Vec<(u32, Monomial)>,
    pub(crate) rows: Vec<BasisRow>,
    pub(crate) pivot_of: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

/// Outcome of reducing a coordinate vector.
pub(crate) enum Reduction {
    /// Preimage bits over the kept generators.
    InSpan(BitVector),
    /// Nonzero residual, zero in every pivot column.
    Residual(BitVector),
}

/// Operation degrees used as generators for degree `d` with bound `max_sq`.
pub fn generator_degrees(d: u32, max_sq: u32, mode: GeneratorMode) -> Vec<u32> {
    let top = max_sq.min(d / 2);
    match mode {
        GeneratorMode::AllSquares => (1..=top).collect(),
        GeneratorMode::PowersOfTwo => (0..32)
            .map(|k| 1u32 << k)
            .take_while(|&i| i <= top)
            .collect(),
    }
}

/// The generator bound that selects the same generator set as `max_sq`.
pub(crate) fn effective_bound(d: u32, max_sq: u32, mode: GeneratorMode) -> u32 {
    generator_degrees(d, max_sq, mode)
        .last()
        .copied()
        .unwrap_or(0)
}

fn image_columns(i: u32, m: &Monomial, degree: u32) -> Vec<u32> {
    let mut cols = Vec::new();
    for_each_sq_term(i, m.exps(), |e| cols.push(rank_exponents(e, degree) as u32));
    cols.sort_unstable();
    cols
}

impl ReducedBasis {
    pub(crate) fn build(
        nvars: usize,
        degree: u32,
        max_sq: u32,
        config: &SolverConfig,
    ) -> Result<Self, SolverError> {
        if degree > config.max_degree {
            return Err(SolverError::Ceiling {
                resource: "degree",
                limit: config.max_degree as u64,
                requested: degree as u64,
            });
        }
        let columns = component_dimension(nvars, degree);
        if columns > config.max_columns {
            return Err(SolverError::Ceiling {
                resource: "columns",
                limit: config.max_columns as u64,
                requested: columns as u64,
            });
        }
        let degrees = generator_degrees(degree, max_sq, config.generators);
        let total_generators: usize = degrees
            .iter()
            .map(|&i| component_dimension(nvars, degree - i))
            .sum();
        if total_generators > config.max_generators {
            return Err(SolverError::Ceiling {
                resource: "generators",
                limit: config.max_generators as u64,
                requested: total_generators as u64,
            });
        }

        let mut b = Builder::new(columns);
        'outer: for &i in &degrees {
            let sources = monomials_of_degree(nvars, degree - i);
            for chunk in sources.monomials().chunks(IMAGE_CHUNK) {
                let images: Vec<Vec<u32>> = chunk
                    .par_iter()
                    .map(|m| image_columns(i, m, degree))
                    .collect();
                for (m, cols) in chunk.iter().zip(images) {
                    if b.insert(i, m, &cols) && b.rows.len() == columns {
                        break 'outer;
                    }
                }
            }
        }
        Ok(b.finish(
            nvars,
            degree,
            effective_bound(degree, max_sq, config.generators),
            config.generators,
        ))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Largest operation degree among the generators.
    pub fn max_sq(&self) -> u32 {
        self.max_sq
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BasisRow] {
        &self.rows
    }

    pub fn generators(&self) -> &[(u32, Monomial)] {
        &self.generators
    }

    pub(crate) fn rebuild_pivots(&mut self) {
        self.pivot_of = vec![NO_PIVOT; self.columns];
        for (r, row) in self.rows.iter().enumerate() {
            self.pivot_of[row.pivot] = r as u32;
        }
    }

    /// Generator combination written as `(i, u_i)` pairs.
    pub fn preimage_terms(&self, preimage: &BitVector) -> Vec<(u32, Polynomial)> {
        let mut by_degree: FxHashMap<u32, Vec<Monomial>> = FxHashMap::default();
        for g in preimage.iter_ones() {
            let (i, m) = &self.generators[g];
            by_degree.entry(*i).or_default().push(m.clone());
        }
        let mut out: Vec<(u32, Polynomial)> = by_degree
            .into_iter()
            .map(|(i, ms)| {
                let u = Polynomial::from_monomials(self.nvars, ms).expect("same ring");
                (i, u)
            })
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub(crate) fn certificate(&self, preimage: &BitVector) -> HitCertificate {
        let mut cert = HitCertificate::new(self.nvars);
        for (i, u) in self.preimage_terms(preimage) {
            cert.push(i, u);
        }
        cert
    }

    pub(crate) fn reduce(&self, v: &BitVector) -> Reduction {
        let mut v = v.clone();
        let mut pre = BitVector::zeros(self.columns);
        let ones: Vec<usize> = v.iter_ones().collect();
        for c in ones {
            let r = self.pivot_of[c];
            if r != NO_PIVOT {
                let row = &self.rows[r as usize];
                // a row vanishes before its pivot
                v.xor_assign_from(&row.bits, c / 64);
                pre.xor_assign(&row.preimage);
            }
        }
        if v.is_zero() {
            Reduction::InSpan(pre)
        } else {
            Reduction::Residual(v)
        }
    }
}

struct Builder {
    columns: usize,
    rows: Vec<BitVector>,
    pre: Vec<BitVector>,
    pivots: Vec<usize>,
    pivot_of: Vec<u32>,
    generators: Vec<(u32, Monomial)>,
}

impl Builder {
    fn new(columns: usize) -> Self {
        Builder {
            columns,
            rows: Vec::new(),
            pre: Vec::new(),
            pivots: Vec::new(),
            pivot_of: vec![NO_PIVOT; columns],
            generators: Vec::new(),
        }
    }

    /// Returns whether the image raised the rank.
    fn insert(&mut self, i: u32, m: &Monomial, cols: &[u32]) -> bool {
        if cols.is_empty() {
            return false;
        }
        let mut v = BitVector::from_ones(self.columns, cols.iter().map(|&c| c as usize));
        let mut used = Vec::new();
        for &c in cols {
            let r = self.pivot_of[c as usize];
            if r != NO_PIVOT {
                v.xor_assign_from(&self.rows[r as usize], c as usize / 64);
                used.push(r as usize);
            }
        }
        if v.is_zero() {
            return false;
        }
        let g = self.generators.len();
        self.generators.push((i, m.clone()));
        let pre_words = (g + 1).div_ceil(64);
        let mut pre = BitVector::zeros(self.columns);
        pre.flip(g);
        for r in used {
            pre.xor_assign_prefix(&self.pre[r], pre_words);
        }
        let p = v.first_one().expect("nonzero");
        let start = p / 64;
        for (row, rp) in self.rows.iter_mut().zip(self.pre.iter_mut()) {
            if row.get(p) {
                row.xor_assign_from(&v, start);
                rp.xor_assign_prefix(&pre, pre_words);
            }
        }
        self.pivot_of[p] = self.rows.len() as u32;
        self.rows.push(v);
        self.pre.push(pre);
        self.pivots.push(p);
        true
    }

    fn finish(self, nvars: usize, degree: u32, max_sq: u32, mode: GeneratorMode) -> ReducedBasis {
        let mut rows: Vec<BasisRow> = self
            .rows
            .into_iter()
            .zip(self.pre)
            .zip(self.pivots)
            .map(|((bits, preimage), pivot)| BasisRow {
                pivot,
                bits,
                preimage,
            })
            .collect();
        rows.sort_by_key(|r| r.pivot);
        let mut basis = ReducedBasis {
            nvars,
            degree,
            max_sq,
            mode,
            columns: self.columns,
            generators: self.generators,
            rows,
            pivot_of: Vec::new(),
        };
        basis.rebuild_pivots();
        basis
    }
}

/// Serializable generator-set tag.
impl GeneratorMode {
    pub fn tag(self) -> &'static str {
        match self {
            GeneratorMode::PowersOfTwo => "powers-of-two",
            GeneratorMode::AllSquares => "all-squares",
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RowRecord {
    pub pivot: usize,
    pub bits: String,
    pub preimage: String,
}
