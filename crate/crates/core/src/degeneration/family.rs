use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Complex64, ComplexPolynomial, ExponentVector, Polynomial, Rational, Ring};
use crate::{Error, Result};

use super::projection::{check_projection, initial_form, WeightFunctional};
use super::relations::RelationSet;

/// Name of the family parameter in the family ring.
pub const FAMILY_PARAMETER: &str = "t";

/// The flat family `g̃_k(x, τ) = τ^{ℓ_k} g_k(τ^{−w} x)` over the `τ`-line.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPresentation {
    relations: RelationSet,
    projection: WeightFunctional,
    weights: Vec<i64>,
    levels: Vec<i64>,
    ring: Arc<Ring>,
    family: Vec<Polynomial>,
    initial: Vec<Polynomial>,
}

impl FamilyPresentation {
    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn projection(&self) -> &WeightFunctional {
        &self.projection
    }

    /// `w_ij = p·(i, u_ij)`, one per generator symbol.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// `ℓ_k`, the largest weight among the monomials of `g_k`.
    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    /// Ring `(x_ij…, t)`; the parameter is the last variable.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn symbols(&self) -> &Arc<Ring> {
        self.relations.symbols()
    }

    pub fn family(&self) -> &[Polynomial] {
        &self.family
    }

    pub fn initial_forms(&self) -> &[Polynomial] {
        &self.initial
    }

    fn parameter_index(&self) -> usize {
        self.ring.nvars() - 1
    }

    /// Coefficient of `τ^q` in `g̃_k`, as a polynomial in the symbols.
    pub fn tau_coefficient(&self, k: usize, q: i64) -> Polynomial {
        let ti = self.parameter_index();
        let terms = self.family[k]
            .terms()
            .filter(|(e, _)| e[ti] == q)
            .map(|(e, c)| (ExponentVector(e.entries()[..ti].to_vec()), c.clone()));
        Polynomial::from_terms(self.symbols(), terms).expect("symbol exponents")
    }

    /// `g̃_k(x, τ₀)` for a rational `τ₀`.
    pub fn specialize_exact(&self, k: usize, tau: &Rational) -> Polynomial {
        let ti = self.parameter_index();
        let mut out = Polynomial::zero(self.symbols());
        for (e, c) in self.family[k].terms() {
            let q = e[ti];
            let factor = if q == 0 {
                Rational::one()
            } else if tau.is_zero() {
                Rational::zero()
            } else {
                num_traits::pow(tau.clone(), q as usize)
            };
            out = &out
                + &Polynomial::monomial(
                    self.symbols(),
                    ExponentVector(e.entries()[..ti].to_vec()),
                    c * factor,
                );
        }
        out
    }

    /// Checks every family identity exactly; the error names the first failure.
    pub fn verify(&self) -> Result<()> {
        let ti = self.parameter_index();
        for (k, g) in self.relations.relations().iter().enumerate() {
            let fam = &self.family[k];
            if let Some((e, _)) = fam.terms().find(|(e, _)| e[ti] < 0) {
                return Err(Error::FamilyConstruction(format!(
                    "relation {}: monomial {e} has a negative power of the parameter",
                    k + 1
                )));
            }
            if &self.specialize_exact(k, &Rational::one()) != g {
                return Err(Error::FamilyConstruction(format!(
                    "relation {}: the fibre at 1 is not the original relation",
                    k + 1
                )));
            }
            if self.specialize_exact(k, &Rational::zero()) != self.initial[k] {
                return Err(Error::FamilyConstruction(format!(
                    "relation {}: the fibre at 0 is not the initial form",
                    k + 1
                )));
            }
            let linear = self.tau_coefficient(k, 1);
            let first = linear.terms().next().map(|(e, _)| e.clone());
            if let Some(e) = first {
                return Err(Error::FamilyConstruction(format!(
                    "relation {}: monomial {e} carries the first power of the parameter",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// Fibre equations at `τ = t`, with complex coefficients.
    pub fn specialize_fiber(&self, t: Complex64) -> Vec<ComplexPolynomial> {
        let ti = self.parameter_index();
        self.family
            .iter()
            .map(|g| {
                let mut out = ComplexPolynomial::zero(self.symbols());
                for (e, c) in g.terms() {
                    let q = e[ti];
                    let factor = if q == 0 { Complex64::new(1.0, 0.0) } else { t.powi(q as i32) };
                    let c = Complex64::new(crate::algebra::rational_to_f64(c), 0.0) * factor;
                    out.add_term(ExponentVector(e.entries()[..ti].to_vec()), c);
                }
                out
            })
            .collect()
    }
}

/// Builds and verifies the family for relations and a weight functional.
pub fn build_family(rels: &RelationSet, p: &WeightFunctional) -> Result<FamilyPresentation> {
    check_projection(rels, p).map_err(|e| Error::FamilyConstruction(format!("{e}")))?;
    let ring = rels.symbols().extended(FAMILY_PARAMETER);
    let ti = ring.nvars() - 1;
    let weights: Vec<i64> = rels.degrees().iter().map(|d| p.value(d)).collect();
    let mut levels = Vec::new();
    let mut family = Vec::new();
    let mut initial = Vec::new();
    for g in rels.relations() {
        let ws: Vec<i64> = g.terms().map(|(e, _)| p.value(&rels.monomial_degree(e))).collect();
        let top = *ws.iter().max().unwrap();
        let terms = g.terms().zip(&ws).map(|((e, c), &w)| {
            let mut ext = e.entries().to_vec();
            ext.push(top - w);
            debug_assert_eq!(ext.len(), ti + 1);
            (ExponentVector(ext), c.clone())
        });
        family.push(Polynomial::from_terms(&ring, terms)?);
        initial.push(initial_form(g, p, rels)?);
        levels.push(top);
    }
    let fam = FamilyPresentation {
        relations: rels.clone(),
        projection: p.clone(),
        weights,
        levels,
        ring,
        family,
        initial,
    };
    fam.verify()?;
    Ok(fam)
}

/// `g̃_k(x, t)` at complex `t` for each relation.
pub fn specialize_fiber(fam: &FamilyPresentation, t: Complex64) -> Vec<ComplexPolynomial> {
    fam.specialize_fiber(t)
}
