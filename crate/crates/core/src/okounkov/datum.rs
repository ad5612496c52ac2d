use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{
    BiDegree, ExponentVector, Polynomial, Rational, Reductions, Ring, ValuationBackend,
};
use crate::{Error, Result};

use super::semigroup::ValueSemigroup;

/// One graded generator `f_ij`.
///
/// `rep` is a polynomial in the intrinsic coordinates; the element of the
/// function field it stands for is `rep / hⁱ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub level: u32,
    pub rep: Polynomial,
    pub value: ExponentVector,
}

/// Graded generators with valuation data: the presentation of `R = ⊕ R_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SagbiDatum {
    ring: Arc<Ring>,
    backend: ValuationBackend,
    reductions: Reductions,
    section: usize,
    generators: Vec<Generator>,
    symbols: Arc<Ring>,
}

/// Name of the polynomial variable standing for generator `j` (1-based) of level `i`.
pub fn generator_symbol(level: u32, j: usize) -> String {
    format!("x{level}_{j}")
}

impl SagbiDatum {
    /// Validates and assembles a datum.
    ///
    /// Generators are ordered by level (stably); `section` indexes the
    /// level-1 generator `h` in the input list. Every declared value is
    /// recomputed with the backend and must match.
    pub fn new(
        ring: Arc<Ring>,
        backend: ValuationBackend,
        reductions: Reductions,
        generators: Vec<Generator>,
        section: usize,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        let n = backend.rank(ring.nvars());
        let h_rep = generators
            .get(section)
            .ok_or_else(|| Error::InvalidDatum(format!("section index {section} out of range")))?
            .rep
            .clone();
        let mut order: Vec<usize> = (0..generators.len()).collect();
        order.sort_by_key(|&i| generators[i].level);
        let section = order.iter().position(|&i| i == section).unwrap();
        let generators: Vec<Generator> = order.into_iter().map(|i| generators[i].clone()).collect();

        let mut names = Vec::new();
        let mut seen = BTreeSet::new();
        let mut count_in_level = 0;
        let mut last_level = 0;
        for g in &generators {
            if g.level == 0 {
                return Err(Error::InvalidDatum("generator levels must be ≥ 1".into()));
            }
            if g.rep.ring() != &ring && **g.rep.ring() != *ring {
                return Err(Error::RingMismatch);
            }
            if g.value.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.value.len(),
                });
            }
            if !seen.insert((g.level, g.value.clone())) {
                return Err(Error::InvalidDatum(format!(
                    "two generators share the value ({},{})",
                    g.level, g.value
                )));
            }
            if g.level != last_level {
                count_in_level = 0;
                last_level = g.level;
            }
            count_in_level += 1;
            names.push(generator_symbol(g.level, count_in_level));
        }
        let symbols = Ring::new(&names);
        let datum = SagbiDatum {
            ring,
            backend,
            reductions,
            section,
            generators,
            symbols,
        };
        let h = &datum.generators[datum.section];
        if h.level != 1 || !h.value.is_zero() || h.rep != h_rep {
            return Err(Error::InvalidDatum(
                "the section must be a level-1 generator of value 0".into(),
            ));
        }
        for (idx, g) in datum.generators.iter().enumerate() {
            let computed = datum.value_at_level(&g.rep, g.level)?.0;
            if computed != g.value {
                return Err(Error::InvalidDatum(format!(
                    "generator {} declares value {} but the valuation gives {}",
                    datum.symbols.vars()[idx],
                    g.value,
                    computed
                )));
            }
        }
        Ok(datum)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn backend(&self) -> &ValuationBackend {
        &self.backend
    }

    pub fn reductions(&self) -> &Reductions {
        &self.reductions
    }

    /// Representative of the distinguished section `h`.
    pub fn section(&self) -> &Polynomial {
        &self.generators[self.section].rep
    }

    pub fn section_index(&self) -> usize {
        self.section
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Ring of generator symbols `x_ij`, one variable per generator in order.
    pub fn symbols(&self) -> &Arc<Ring> {
        &self.symbols
    }

    /// Rank `n` of the value lattice.
    pub fn rank(&self) -> usize {
        self.backend.rank(self.ring.nvars())
    }

    /// Largest generator level `r`.
    pub fn max_level(&self) -> u32 {
        self.generators.iter().map(|g| g.level).max().unwrap_or(0)
    }

    pub fn bidegrees(&self) -> Vec<BiDegree> {
        self.generators
            .iter()
            .map(|g| BiDegree::new(g.level as u64, g.value.clone()))
            .collect()
    }

    pub fn semigroup(&self) -> ValueSemigroup {
        ValueSemigroup::new(self.rank(), self.bidegrees()).expect("validated generators")
    }

    /// Level of a monomial in the generator symbols.
    pub fn monomial_level(&self, e: &ExponentVector) -> i64 {
        e.entries()
            .iter()
            .zip(&self.generators)
            .map(|(&a, g)| a * g.level as i64)
            .sum()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.reductions.normal_form(f)
    }

    /// Value and leading coefficient of `f / hᵏ`.
    pub fn value_at_level(&self, f: &Polynomial, k: u32) -> Result<(ExponentVector, Rational)> {
        let f = self.normal_form(f)?;
        if f.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let hk = self.normal_form(&self.section().pow(k))?;
        self.backend.leading(&f, &hk)
    }

    /// `ṽ(f) = (k, v(f/hᵏ))` for a representative `f` of an element of `R_k`.
    pub fn extended_value(&self, f: &Polynomial, k: u32) -> Result<BiDegree> {
        Ok(BiDegree::new(k as u64, self.value_at_level(f, k)?.0))
    }

    /// Substitutes generator representatives for the symbols and reduces.
    pub fn substitute_generators(&self, expr: &Polynomial) -> Result<Polynomial> {
        let images: Vec<Polynomial> = self.generators.iter().map(|g| g.rep.clone()).collect();
        let p = expr.substitute(&self.ring, &images)?;
        self.normal_form(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Orientation, SeriesContext, DEFAULT_SERIES_CAP};
    use alloc::vec;

    pub(crate) fn elliptic() -> SagbiDatum {
        let r = Ring::new(&["x", "y"]);
        let ctx = SeriesContext::new(&r, "u", &[("Z", "u^3 + Z^3")], &["u*Z^-1", "Z^-1"], 8, DEFAULT_SERIES_CAP).unwrap();
        let red = Reductions::new(vec![Reductions::rule(
            &parse_polynomial(&r, "y^2").unwrap(),
            &parse_polynomial(&r, "x^3 + 1").unwrap(),
        )
        .unwrap()])
        .unwrap();
        let gens = [("y", 0), ("x", 1), ("1", 3)]
            .iter()
            .map(|(s, v)| Generator {
                level: 1,
                rep: parse_polynomial(&r, s).unwrap(),
                value: ExponentVector(vec![*v]),
            })
            .collect();
        SagbiDatum::new(r, ValuationBackend::Series(ctx), red, gens, 0).unwrap()
    }

    #[test]
    fn extended_values() {
        let d = elliptic();
        let r = d.ring().clone();
        assert_eq!(d.extended_value(&parse_polynomial(&r, "y").unwrap(), 1).unwrap(), BiDegree::new(1, vec![0]));
        assert_eq!(d.extended_value(&parse_polynomial(&r, "x").unwrap(), 1).unwrap(), BiDegree::new(1, vec![1]));
        // x at level 2 is the product of the value-1 and value-3 generators
        assert_eq!(d.extended_value(&parse_polynomial(&r, "x").unwrap(), 2).unwrap(), BiDegree::new(2, vec![4]));
        assert_eq!(d.extended_value(&Polynomial::zero(&r), 1), Err(Error::UndefinedValuation));
        assert_eq!(d.symbols().vars(), &["x1_1", "x1_2", "x1_3"]);
    }

    #[test]
    fn rejects_wrong_declared_value() {
        let r = Ring::new(&["u"]);
        let gens = vec![
            Generator { level: 1, rep: Polynomial::one(&r), value: ExponentVector(vec![0]) },
            Generator { level: 1, rep: parse_polynomial(&r, "u").unwrap(), value: ExponentVector(vec![2]) },
        ];
        let err = SagbiDatum::new(r, ValuationBackend::Monomial(Orientation::Min), Reductions::none(), gens, 0);
        assert!(matches!(err, Err(Error::InvalidDatum(_))));
    }
}
