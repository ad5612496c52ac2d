//! Toric degenerations: weight functionals, initial forms and the family
//! `g̃_k(x, τ)` whose fibre at `τ = 0` is toric.

mod family;
mod groebner;
mod projection;
mod relations;

pub use family::{build_family, specialize_fiber, FamilyPresentation, FAMILY_PARAMETER};
pub use groebner::{buchberger_small, is_groebner, MAX_RELATIONS, MAX_VARIABLES};
pub use projection::{build_projection, check_projection, initial_form, WeightFunctional};
pub use relations::RelationSet;
