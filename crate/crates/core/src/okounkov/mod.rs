//! Value semigroups, subduction, Newton–Okounkov bodies and their slices.

mod datum;
mod degree;
pub(crate) mod linalg;
mod polytope;
mod semigroup;
mod slice;
mod subduction;

pub use datum::{generator_symbol, Generator, SagbiDatum};
pub use degree::{degree_check, DegreeReport};
pub use polytope::{Facet, OkounkovBody, MAX_EXACT_DIM};
pub use semigroup::{
    brute_force_level, decompose, hilbert_function, okounkov_body, semigroup_hilbert,
    ValueSemigroup,
};
pub use slice::{default_slice_bound, slice, GradingHomomorphism, SliceResult};
pub use subduction::{level_monomials, random_combination, subduct, subduction_residual, Subduction};

use crate::algebra::{BiDegree, Polynomial};
use crate::Result;

/// `ṽ(f) = (k, v(f/hᵏ))`.
pub fn extended_value(f: &Polynomial, k: u32, datum: &SagbiDatum) -> Result<BiDegree> {
    datum.extended_value(f, k)
}
