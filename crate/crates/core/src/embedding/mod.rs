//! Fibres inside `ℙ(V_d*) × ℂ`: the `V_d` weight basis, the embedding
//! `ρ_t`, the `ℂ*`-rescaling and the toric moment map.

mod basis;
mod point;
mod sample;

pub use basis::{default_degree, enumerate_vd_basis, VdBasis, VdEntry, MAX_BASIS_ENTRIES};
pub use point::{
    embed_point, family_residual, generator_coordinates, normalize, rescale_action,
    subtorus_moment, toric_moment, ProjectivePoint, BASE_LOCUS_TOLERANCE, EMBEDDING_TOLERANCE,
};
pub use sample::IntrinsicSampler;
