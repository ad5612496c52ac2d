use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_traits::Float;

use crate::algebra::{rational_to_f64, Complex64, Polynomial};
use crate::degeneration::FamilyPresentation;
use crate::embedding::{ProjectivePoint, VdBasis};
use crate::{Error, Result};

type C = Complex64;

/// Singular values below this fraction of the largest count as zero.
const RANK_TOLERANCE: f64 = 1e-13;
/// Condition number above which a frame is flagged as ill-conditioned.
pub const ILL_CONDITIONED: f64 = 1e8;
/// Smallest admissible norm of the projected gradient of `Re π`.
pub const CRITICAL_GRADIENT: f64 = 1e-10;
/// Affine chart share below which a chart point should be re-charted.
pub const RECHART_SHARE: f64 = 0.3;

/// A point of `𝔛` in the affine chart `z_chart = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: usize,
    /// The homogeneous coordinates other than `z_chart`, divided by it.
    pub coords: Vec<C>,
    pub t: C,
}

impl ChartPoint {
    /// Dehomogenizes at the largest-modulus coordinate.
    pub fn from_homogeneous(z: &[C], t: C) -> Result<Self> {
        let chart = (0..z.len())
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if z[b].norm() >= z[i].norm() => Some(b),
                _ => Some(i),
            })
            .ok_or_else(|| Error::Chart("empty coordinate vector".into()))?;
        let c = z[chart];
        if c.norm() == 0.0 {
            return Err(Error::Chart("all homogeneous coordinates vanish".into()));
        }
        let coords = z.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, v)| v / c).collect();
        Ok(ChartPoint { chart, coords, t })
    }

    pub fn from_projective(p: &ProjectivePoint) -> Result<Self> {
        Self::from_homogeneous(&p.z, p.t)
    }

    pub fn homogeneous(&self) -> Vec<C> {
        let mut z = self.coords.clone();
        z.insert(self.chart, C::new(1.0, 0.0));
        z
    }

    pub fn to_projective(&self) -> Result<ProjectivePoint> {
        ProjectivePoint::normalized(self.homogeneous(), self.t)
    }

    /// Whether the chart coordinate has fallen below [`RECHART_SHARE`] of the largest one.
    pub fn needs_rechart(&self) -> bool {
        self.coords.iter().any(|c| RECHART_SHARE * c.norm() > 1.0)
    }
}

/// Unit-sphere lift of a point of `ℙᴺ × ℂ`; tangent vectors are horizontal.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Lift {
    pub z: Vec<C>,
    pub t: C,
}

impl Lift {
    pub fn new(mut z: Vec<C>, t: C) -> Result<Self> {
        unit(&mut z)?;
        Ok(Lift { z, t })
    }

    pub fn from_chart(pt: &ChartPoint) -> Result<Self> {
        Self::new(pt.homogeneous(), pt.t)
    }

    pub fn chart(&self) -> ChartPoint {
        ChartPoint::from_homogeneous(&self.z, self.t).expect("unit vector")
    }
}

pub(crate) fn unit(z: &mut [C]) -> Result<()> {
    let n = Float::sqrt(z.iter().map(|c| c.norm_sqr()).sum::<f64>());
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Flow(format!("state has norm {n}")));
    }
    for c in z.iter_mut() {
        *c /= n;
    }
    Ok(())
}

/// Removes the component along `z` (assumed unit), leaving a horizontal vector.
pub(crate) fn horizontal(z: &[C], v: &mut [C]) {
    let a: C = z.iter().zip(v.iter()).map(|(z, v)| z.conj() * v).sum();
    for (v, z) in v.iter_mut().zip(z) {
        *v -= a * z;
    }
}

/// `ω(u, v) = Im(uᴴ v)`, the Kähler form of the horizontal metric `Re(uᴴ v)`.
pub fn kahler_form(u: &[C], v: &[C]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C>().im
}

/// A polynomial in `(z, t)` stored for fast complex evaluation.
#[derive(Clone, Debug, PartialEq)]
struct CompiledPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    fn new(p: &Polynomial) -> Result<Self> {
        let terms = p
            .terms()
            .map(|(e, c)| {
                if e.has_negative() {
                    return Err(Error::Unsupported("Laurent family relations".into()));
                }
                Ok((e.entries().iter().map(|&k| k as u32).collect(), rational_to_f64(c)))
            })
            .collect::<Result<_>>()?;
        Ok(CompiledPoly { terms })
    }

    /// Value, `Σ|terms|`, and the gradient (written into `grad`).
    fn eval(&self, x: &[C], grad: Option<&mut [C]>) -> (C, f64) {
        let mut val = C::new(0.0, 0.0);
        let mut scale = 0.0;
        let mut grad = grad;
        if let Some(g) = grad.as_deref_mut() {
            g.iter_mut().for_each(|v| *v = C::new(0.0, 0.0));
        }
        for (e, c) in &self.terms {
            let m = e.iter().zip(x).fold(C::new(*c, 0.0), |m, (&k, v)| if k == 0 { m } else { m * v.powi(k as i32) });
            val += m;
            scale += m.norm();
            if let Some(g) = grad.as_deref_mut() {
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let d = e.iter().zip(x).enumerate().fold(C::new(*c * k as f64, 0.0), |m, (j, (&kj, v))| {
                        let p = if j == i { kj - 1 } else { kj };
                        if p == 0 { m } else { m * v.powi(p as i32) }
                    });
                    g[i] += d;
                }
            }
        }
        (val, scale)
    }
}

/// Orthonormal complex basis of a tangent space, with its conditioning.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    /// Complex orthonormal vectors; the real frame is `{q, i·q}`.
    pub complex: Vec<Vec<C>>,
    pub condition: f64,
}

impl Frame {
    pub fn ill_conditioned(&self) -> bool {
        self.condition > ILL_CONDITIONED
    }

    /// The real orthonormal frame `q₁, i·q₁, q₂, i·q₂, …`.
    pub fn real(&self) -> Vec<Vec<C>> {
        self.complex
            .iter()
            .flat_map(|q| [q.clone(), q.iter().map(|v| v * C::new(0.0, 1.0)).collect()])
            .collect()
    }
}

/// The embedded family `{g̃_k(z, t) = 0} ⊂ ℙᴺ × ℂ` with its numerical calculus.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowSystem {
    coords: usize,
    dim: usize,
    relations: Vec<CompiledPoly>,
    basis: VdBasis,
}

impl FlowSystem {
    /// Requires a linear basis, where basis coordinates are generator
    /// coordinates and the family relations cut out the embedded fibres.
    pub fn new(fam: &FamilyPresentation, basis: &VdBasis) -> Result<Self> {
        if !basis.is_linear() {
            return Err(Error::Unsupported(
                "the flow runs in the level-1 embedding; every generator must have level 1".into(),
            ));
        }
        let relations = fam.family().iter().map(CompiledPoly::new).collect::<Result<_>>()?;
        Ok(FlowSystem {
            coords: basis.len(),
            dim: basis.rank(),
            relations,
            basis: basis.clone(),
        })
    }

    /// Number of homogeneous coordinates `N + 1`.
    pub fn coordinates(&self) -> usize {
        self.coords
    }

    /// Complex dimension of the fibres.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &VdBasis {
        &self.basis
    }

    fn point(&self, z: &[C], t: C) -> Vec<C> {
        let mut p = z.to_vec();
        p.push(t);
        p
    }

    /// Largest relative residual `|g̃_k| / Σ|terms|`.
    pub fn residual(&self, z: &[C], t: C) -> f64 {
        let p = self.point(z, t);
        self.relations
            .iter()
            .map(|g| {
                let (v, s) = g.eval(&p, None);
                if s == 0.0 { 0.0 } else { v.norm() / s }
            })
            .fold(0.0, f64::max)
    }

    /// Values and the Jacobian with respect to `(z, t)`.
    fn jacobian(&self, z: &[C], t: C) -> (DVector<C>, DMatrix<C>) {
        let p = self.point(z, t);
        let k = self.relations.len();
        let mut vals = DVector::zeros(k);
        let mut jac = DMatrix::zeros(k, self.coords + 1);
        let mut grad = vec![C::new(0.0, 0.0); self.coords + 1];
        for (i, g) in self.relations.iter().enumerate() {
            vals[i] = g.eval(&p, Some(&mut grad)).0;
            for (j, d) in grad.iter().enumerate() {
                jac[(i, j)] = *d;
            }
        }
        (vals, jac)
    }

    /// Gauss–Newton projection onto the fibre over `t` (held fixed), then
    /// rescaling to unit norm. Returns the final residual.
    ///
    /// Iterates until the correction stalls at rounding level rather than
    /// stopping at `tol`: a fixed-count early exit would make the retraction
    /// a discontinuous function of its input, which finite differences
    /// through the flow cannot tolerate.
    pub(crate) fn retract(&self, z: &mut [C], t: C, tol: f64, iters: usize) -> Result<f64> {
        unit(z)?;
        let mut res = self.residual(z, t);
        for _ in 0..iters {
            if res == 0.0 {
                break;
            }
            let (vals, jac) = self.jacobian(z, t);
            let step = self.gauss_newton_step(jac.columns(0, self.coords).into_owned(), &vals);
            for (zi, s) in z.iter_mut().zip(step.iter()) {
                *zi -= s;
            }
            unit(z)?;
            res = self.residual(z, t);
            if step.norm() <= 1e-15 && res < tol {
                break;
            }
        }
        if res < tol {
            Ok(res)
        } else {
            Err(Error::Flow(format!(
                "retraction did not converge: residual {res:e} after {iters} iterations"
            )))
        }
    }

    /// Minimal-norm solution of `A·δ = g` truncated at the codimension of
    /// the fibres, so the pseudo-inverse never flips rank between nearby inputs.
    fn gauss_newton_step(&self, a: DMatrix<C>, g: &DVector<C>) -> DVector<C> {
        let codim = self.coords - 1 - self.dim;
        let svd = a.svd(true, true);
        let (u, vt) = (svd.u.as_ref().expect("requested"), svd.v_t.as_ref().expect("requested"));
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let mut step = DVector::zeros(self.coords);
        for &i in order.iter().take(codim) {
            let sigma = svd.singular_values[i];
            if sigma <= 0.0 {
                break;
            }
            let c = u.column(i).dotc(g) / C::new(sigma, 0.0);
            for (s, v) in step.iter_mut().zip(vt.row(i).iter()) {
                *s += v.conj() * c;
            }
        }
        step
    }

    /// Orthonormal kernel of `rows`, which must have exactly `expected` null directions.
    fn kernel(&self, rows: DMatrix<C>, expected: usize) -> Result<Frame> {
        let cols = rows.ncols();
        // pad so the decomposition returns a full set of right singular vectors
        let m = rows.nrows().max(cols);
        let mut full = DMatrix::zeros(m, cols);
        full.view_mut((0, 0), (rows.nrows(), cols)).copy_from(&rows);
        let svd = full.svd(false, true);
        let vt = svd.v_t.as_ref().expect("requested");
        let mut order: Vec<usize> = (0..cols).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let sigma = |i: usize| svd.singular_values[order[i]];
        let rank = cols - expected;
        let top = sigma(0);
        if rank > 0 && sigma(rank - 1) <= RANK_TOLERANCE * top {
            return Err(Error::SingularPoint(format!(
                "tangent space has dimension above {expected}: singular value {:e}",
                sigma(rank - 1)
            )));
        }
        if expected > 0 && sigma(rank) > 1e-6 * top {
            return Err(Error::Flow(format!(
                "point is off the variety: tangent space has dimension below {expected}"
            )));
        }
        let condition = if rank > 0 { top / sigma(rank - 1) } else { 1.0 };
        let complex = order[rank..]
            .iter()
            .map(|&i| vt.row(i).iter().map(|v| v.conj()).collect())
            .collect();
        Ok(Frame { complex, condition })
    }

    /// Constraint rows `[zᴴ 0; A b]`, the relation block scaled by its largest row norm.
    ///
    /// A common scale keeps rows with a nearly vanishing gradient small;
    /// normalizing them one by one would promote their rounding noise to
    /// spurious rank.
    fn constraint_rows(&self, z: &[C], t: C, with_t: bool) -> DMatrix<C> {
        let (_, jac) = self.jacobian(z, t);
        let cols = if with_t { self.coords + 1 } else { self.coords };
        let block = jac.columns(0, cols).into_owned();
        let top = (0..block.nrows()).map(|i| block.row(i).norm()).fold(0.0, f64::max);
        let mut rows = DMatrix::zeros(jac.nrows() + 1, cols);
        for (j, v) in z.iter().enumerate() {
            rows[(0, j)] = v.conj();
        }
        if top > 0.0 {
            rows.view_mut((1, 0), (block.nrows(), cols)).copy_from(&(block / C::new(top, 0.0)));
        }
        rows
    }

    pub(crate) fn total_frame_lift(&self, s: &Lift) -> Result<Frame> {
        self.kernel(self.constraint_rows(&s.z, s.t, true), self.dim + 1)
    }

    pub(crate) fn fiber_frame_lift(&self, s: &Lift) -> Result<Frame> {
        self.kernel(self.constraint_rows(&s.z, s.t, false), self.dim)
    }

    /// `V_π = −∇Re(π)/‖∇Re(π)‖²`; the last entry is the `t`-component.
    pub(crate) fn gradient_hamiltonian_lift(&self, s: &Lift) -> Result<Vec<C>> {
        let f = self.total_frame_lift(s)?;
        let tc = self.coords;
        let mut grad = vec![C::new(0.0, 0.0); tc + 1];
        let mut norm2 = 0.0;
        for q in &f.complex {
            let c = q[tc].conj();
            norm2 += q[tc].norm_sqr();
            for (g, v) in grad.iter_mut().zip(q) {
                *g += v * c;
            }
        }
        if Float::sqrt(norm2) <= CRITICAL_GRADIENT {
            return Err(Error::CriticalPoint(Float::sqrt(norm2)));
        }
        Ok(grad.into_iter().map(|g| -g / norm2).collect())
    }

    /// Real orthonormal frame of `T𝔛` at a chart point (dimension `2(dim X + 1)`).
    pub fn tangent_frame(&self, pt: &ChartPoint) -> Result<Frame> {
        self.total_frame_lift(&Lift::from_chart(pt)?)
    }

    /// Real orthonormal frame of the fibre tangent space (dimension `2 dim X`).
    pub fn fiber_frame(&self, pt: &ChartPoint) -> Result<Frame> {
        self.fiber_frame_lift(&Lift::from_chart(pt)?)
    }

    /// The gradient-Hamiltonian vector at a chart point, as a horizontal
    /// vector at the unit lift followed by its `t`-component.
    pub fn gradient_hamiltonian(&self, pt: &ChartPoint) -> Result<Vec<C>> {
        self.gradient_hamiltonian_lift(&Lift::from_chart(pt)?)
    }

    /// Unit lift of a chart point, for pairing with vectors from this system.
    pub fn lift(&self, pt: &ChartPoint) -> Result<Vec<C>> {
        Ok(Lift::from_chart(pt)?.z)
    }
}
