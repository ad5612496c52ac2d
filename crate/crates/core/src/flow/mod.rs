//! The gradient-Hamiltonian flow of `Re π` on the embedded family and the
//! integrable system `F = μ₀ ∘ φ ∘ ρ_ε` it produces.
//!
//! States live on the unit sphere over `ℙᴺ`, with tangent vectors taken
//! horizontal (orthogonal to the point), so the Fubini–Study metric is the
//! Euclidean one restricted to horizontal vectors and no chart switching is
//! needed during integration. [`ChartPoint`] is the exchange format.

mod config;
mod integrable;
mod integrate;
mod system;

pub use config::FlowConfig;
pub use integrable::{
    integrable_system_at, integrable_system_eval, poisson_bracket, poisson_matrix,
    random_fiber_vector, sample_points, start_point, symplectic_residual, IntegrableValue,
};
pub use integrate::{flow_to, FlowDiagnostics, FlowResult, FlowSample};
pub use system::{
    kahler_form, ChartPoint, FlowSystem, Frame, CRITICAL_GRADIENT, ILL_CONDITIONED, RECHART_SHARE,
};
