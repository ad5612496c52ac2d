use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{BiDegree, ExponentVector, Orientation, Polynomial, Ring};
use crate::okounkov::SagbiDatum;
use crate::{Error, Result};

/// Level-homogeneous relations among the generator symbols `x_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSet {
    symbols: Arc<Ring>,
    degrees: Vec<BiDegree>,
    relations: Vec<Polynomial>,
    levels: Vec<u64>,
    orientation: Orientation,
}

impl RelationSet {
    /// Relations for a datum; each must vanish exactly after substituting
    /// the generator representatives.
    pub fn new(datum: &SagbiDatum, relations: Vec<Polynomial>) -> Result<Self> {
        let rels = Self::from_degrees(
            datum.symbols().clone(),
            datum.bidegrees(),
            relations,
            datum.backend().orientation(),
        )?;
        for (k, g) in rels.relations.iter().enumerate() {
            if !datum.substitute_generators(g)?.is_zero() {
                return Err(Error::InvalidDatum(format!(
                    "relation {} ({g}) does not vanish on the generators",
                    k + 1
                )));
            }
        }
        Ok(rels)
    }

    /// Relations over symbols with the given degrees, checked only for
    /// homogeneity.
    pub fn from_degrees(
        symbols: Arc<Ring>,
        degrees: Vec<BiDegree>,
        relations: Vec<Polynomial>,
        orientation: Orientation,
    ) -> Result<Self> {
        if degrees.len() != symbols.nvars() {
            return Err(Error::DimensionMismatch {
                expected: symbols.nvars(),
                found: degrees.len(),
            });
        }
        let mut levels = Vec::with_capacity(relations.len());
        for (k, g) in relations.iter().enumerate() {
            if g.ring() != &symbols && **g.ring() != *symbols {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                return Err(Error::InvalidDatum(format!("relation {} is zero", k + 1)));
            }
            if g.terms().any(|(e, _)| e.has_negative()) {
                return Err(Error::InvalidDatum(format!(
                    "relation {} has negative exponents",
                    k + 1
                )));
            }
            let mut lv = g.terms().map(|(e, _)| monomial_level(&degrees, e));
            let first = lv.next().unwrap();
            if lv.any(|l| l != first) {
                return Err(Error::InvalidDatum(format!(
                    "relation {} ({g}) is not level-homogeneous",
                    k + 1
                )));
            }
            levels.push(first);
        }
        Ok(RelationSet {
            symbols,
            degrees,
            relations,
            levels,
            orientation,
        })
    }

    pub fn symbols(&self) -> &Arc<Ring> {
        &self.symbols
    }

    pub fn degrees(&self) -> &[BiDegree] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Level `n_k` of each relation.
    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn rank(&self) -> usize {
        self.degrees.first().map_or(0, |d| d.value.len())
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// `deg(x^α) = Σ α_ij (i, u_ij)`.
    pub fn monomial_degree(&self, e: &ExponentVector) -> BiDegree {
        let mut d = BiDegree::zero(self.rank());
        for (&a, g) in e.entries().iter().zip(&self.degrees) {
            if a != 0 {
                d.level += a as u64 * g.level;
                d.value = &d.value + &g.value.scaled(a);
            }
        }
        d
    }
}

fn monomial_level(degrees: &[BiDegree], e: &ExponentVector) -> u64 {
    e.entries()
        .iter()
        .zip(degrees)
        .map(|(&a, d)| a as u64 * d.level)
        .sum()
}
