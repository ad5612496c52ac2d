use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{det, dot, nullspace, primitive, rank, rref, sub, Matrix};
use crate::algebra::{rational_to_f64, Rational};
use crate::{Error, Result};

/// Largest ambient dimension handled by the exact hull code.
pub const MAX_EXACT_DIM: usize = 3;

/// Half-space `normal · x ≤ offset` (or a hyperplane when used as an equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }
}

/// Exact rational polytope in `ℚⁿ`, kept in both V- and H-representation.
///
/// `facets` bound the polytope inside its affine hull, which is cut out by
/// `equations`; a full-dimensional polytope has no equations.
#[derive(Clone, Debug, PartialEq)]
pub struct OkounkovBody {
    dim: usize,
    affine_dim: Option<usize>,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
    volume: Rational,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer((k as i64).into()))
}

impl OkounkovBody {
    pub fn empty(dim: usize) -> Self {
        OkounkovBody {
            dim,
            affine_dim: None,
            vertices: Vec::new(),
            facets: Vec::new(),
            equations: Vec::new(),
            volume: Rational::zero(),
        }
    }

    /// Convex hull of finitely many points of `ℚⁿ`, `n ≤ 3`.
    pub fn from_points(dim: usize, points: &[Vec<Rational>]) -> Result<Self> {
        if dim > MAX_EXACT_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Ok(Self::empty(dim));
        }
        let (affine_dim, equations, facets) = hull(dim, &pts);
        let vertices: Vec<Vec<Rational>> = if affine_dim == 0 {
            vec![pts[0].clone()]
        } else {
            pts.iter()
                .filter(|p| {
                    let tight: Matrix = facets
                        .iter()
                        .filter(|f| f.slack(p).is_zero())
                        .map(|f| f.normal.clone())
                        .collect();
                    rank(&tight) == affine_dim
                })
                .cloned()
                .collect()
        };
        let mut body = OkounkovBody {
            dim,
            affine_dim: Some(affine_dim),
            vertices,
            facets,
            equations,
            volume: Rational::zero(),
        };
        if affine_dim == dim && dim > 0 {
            body.volume = body
                .simplices()?
                .iter()
                .map(|s| {
                    let m: Matrix = s[1..].iter().map(|v| sub(v, &s[0])).collect();
                    det(&m).abs()
                })
                .sum::<Rational>()
                / factorial(dim);
        }
        Ok(body)
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull, `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_empty(&self) -> bool {
        self.affine_dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    /// `n`-dimensional volume (zero unless full-dimensional).
    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
            && self.equations.iter().all(|e| e.slack(x).is_zero())
    }

    /// Largest violation of the H-representation at a floating-point point.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let eval = |f: &Facet| -> f64 {
            f.normal
                .iter()
                .zip(x)
                .map(|(a, xi)| rational_to_f64(a) * xi)
                .sum::<f64>()
                - rational_to_f64(&f.offset)
        };
        let ineq = self.facets.iter().map(|f| eval(f).max(0.0));
        let eq = self.equations.iter().map(|e| eval(e).abs());
        ineq.chain(eq).fold(0.0, f64::max)
    }

    /// Checks that V- and H-representations agree: every vertex satisfies all
    /// constraints and every facet is tight at `affine_dim` or more vertices.
    pub fn cross_check(&self) -> bool {
        let Some(d) = self.affine_dim else {
            return self.vertices.is_empty();
        };
        self.vertices.iter().all(|v| self.contains(v))
            && self.facets.iter().all(|f| {
                let tight: Vec<&Vec<Rational>> =
                    self.vertices.iter().filter(|v| f.slack(v).is_zero()).collect();
                tight.len() >= d
            })
    }

    /// Pulling triangulation: simplices as vertex lists of length `affine_dim + 1`.
    pub fn simplices(&self) -> Result<Vec<Vec<Vec<Rational>>>> {
        let Some(d) = self.affine_dim else {
            return Ok(Vec::new());
        };
        if d == 0 {
            return Ok(vec![vec![self.vertices[0].clone()]]);
        }
        let apex = &self.vertices[0];
        let mut out = Vec::new();
        for f in &self.facets {
            if f.slack(apex).is_zero() {
                continue;
            }
            let face: Vec<Vec<Rational>> =
                self.vertices.iter().filter(|v| f.slack(v).is_zero()).cloned().collect();
            let face = OkounkovBody::from_points(self.dim, &face)?;
            for mut s in face.simplices()? {
                s.insert(0, apex.clone());
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Number of integer points in the dilate `k·Δ`.
    pub fn count_lattice_points(&self, k: u64) -> u64 {
        self.lattice_points(k).len() as u64
    }

    /// Integer points of `k·Δ` in lexicographic order.
    pub fn lattice_points(&self, k: u64) -> Vec<Vec<i64>> {
        if self.is_empty() {
            return Vec::new();
        }
        let kq = Rational::from_integer((k as i64).into());
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let vals = self.vertices.iter().map(|v| &v[i] * &kq);
            let min = vals.clone().min().unwrap();
            let max = vals.max().unwrap();
            lo.push(min.ceil().to_integer().to_i64().unwrap_or(i64::MIN));
            hi.push(max.floor().to_integer().to_i64().unwrap_or(i64::MAX));
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return out;
        }
        loop {
            let inside = if k == 0 {
                cur.iter().all(|&c| c == 0)
            } else {
                let x: Vec<Rational> = cur
                    .iter()
                    .map(|&c| Rational::from_integer(c.into()) / &kq)
                    .collect();
                self.contains(&x)
            };
            if inside {
                out.push(cur.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..self.dim].copy_from_slice(&lo[i + 1..self.dim]);
                    break;
                }
            }
        }
    }

    /// Intersection with the affine subspace `{x : aᵢ·x = bᵢ}`.
    pub fn intersect_affine(&self, eqs: &[Facet]) -> Result<OkounkovBody> {
        if self.is_empty() {
            return Ok(Self::empty(self.dim));
        }
        let n = self.dim;
        let mut equalities: Vec<Facet> = self.equations.clone();
        equalities.extend(eqs.iter().filter(|e| e.normal.iter().any(|x| !x.is_zero()) || !e.offset.is_zero()).cloned());
        let eq_rank = rank(&equalities.iter().map(|e| e.normal.clone()).collect());
        let need = n.saturating_sub(eq_rank);
        let mut points: Vec<Vec<Rational>> = Vec::new();
        for subset in combinations(self.facets.len(), need) {
            let rows: Vec<&Facet> = equalities
                .iter()
                .chain(subset.iter().map(|&i| &self.facets[i]))
                .collect();
            if let Some(x) = solve_overdetermined(&rows, n) {
                if self.facets.iter().all(|f| !f.slack(&x).is_negative())
                    && equalities.iter().all(|e| e.slack(&x).is_zero())
                {
                    points.push(x);
                }
            }
        }
        OkounkovBody::from_points(n, &points)
    }
}

/// Unique solution of `{normal·x = offset}` over the given rows, if any.
fn solve_overdetermined(rows: &[&Facet], n: usize) -> Option<Vec<Rational>> {
    let mut a: Matrix = rows
        .iter()
        .map(|f| {
            let mut r = f.normal.clone();
            r.push(f.offset.clone());
            r
        })
        .collect();
    if n == 0 {
        return a.iter().all(|r| r[0].is_zero()).then(Vec::new);
    }
    let pivots = rref(&mut a);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(a.iter().take(n).map(|r| r[n].clone()).collect())
}

/// Canonical hyperplane: primitive integer normal with a positive first nonzero entry.
fn canonical_equation(normal: Vec<Rational>, point: &[Rational]) -> Facet {
    let mut a = primitive(&normal);
    if a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        a = a.into_iter().map(|x| -x).collect();
    }
    let offset = dot(&a, point);
    Facet { normal: a, offset }
}

fn hull(dim: usize, pts: &[Vec<Rational>]) -> (usize, Vec<Facet>, Vec<Facet>) {
    let p0 = &pts[0];
    let mut dirs: Matrix = pts[1..].iter().map(|p| sub(p, p0)).collect();
    let pivots = rref(&mut dirs);
    let d = pivots.len();
    dirs.truncate(d);
    let mut equations: Vec<Facet> = if dirs.is_empty() {
        (0..dim)
            .map(|i| {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::one();
                canonical_equation(e, p0)
            })
            .collect()
    } else {
        nullspace(&dirs, dim)
            .into_iter()
            .map(|a| canonical_equation(a, p0))
            .collect()
    };
    equations.sort();
    if d == 0 {
        return (0, equations, Vec::new());
    }
    let mut facets: Vec<Facet> = Vec::new();
    for subset in combinations(pts.len(), d) {
        let q0 = &pts[subset[0]];
        let m: Matrix = subset[1..]
            .iter()
            .map(|&i| {
                let diff = sub(&pts[i], q0);
                dirs.iter().map(|l| dot(&diff, l)).collect()
            })
            .collect();
        let ns = if m.is_empty() {
            vec![vec![Rational::one()]]
        } else {
            nullspace(&m, d)
        };
        if ns.len() != 1 {
            continue;
        }
        let mut normal = vec![Rational::zero(); dim];
        for (c, l) in ns[0].iter().zip(&dirs) {
            for (x, y) in normal.iter_mut().zip(l) {
                *x += c * y;
            }
        }
        // Remove the component along the equations so the normal is canonical
        // within the affine hull.
        let normal = project_into_span(&normal, &dirs);
        let level = dot(&normal, q0);
        let vals: Vec<Rational> = pts.iter().map(|p| dot(&normal, p)).collect();
        let (normal, offset) = if vals.iter().all(|v| *v <= level) {
            (normal, level)
        } else if vals.iter().all(|v| *v >= level) {
            (normal.into_iter().map(|x| -x).collect(), -level)
        } else {
            continue;
        };
        let scale_to = primitive(&normal);
        let ratio = nonzero_ratio(&scale_to, &normal);
        let facet = Facet {
            normal: scale_to,
            offset: offset * ratio,
        };
        if !facets.contains(&facet) {
            facets.push(facet);
        }
    }
    facets.sort();
    (d, equations, facets)
}

/// Orthogonal projection of `v` onto the row span of `basis`.
fn project_into_span(v: &[Rational], basis: &Matrix) -> Vec<Rational> {
    let d = basis.len();
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|a| dot(a, v)).collect();
    let c = super::linalg::solve(&gram, &rhs).expect("independent hull directions");
    let mut out = vec![Rational::zero(); v.len()];
    for i in 0..d {
        for (o, b) in out.iter_mut().zip(&basis[i]) {
            *o += &c[i] * b;
        }
    }
    out
}

fn nonzero_ratio(scaled: &[Rational], orig: &[Rational]) -> Rational {
    scaled
        .iter()
        .zip(orig)
        .find(|(_, o)| !o.is_zero())
        .map(|(s, o)| s / o)
        .unwrap_or_else(Rational::one)
}

/// Least common multiple of positive integers.
pub(crate) fn lcm_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |a, b| a.lcm(&b.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn segment() {
        let b = OkounkovBody::from_points(1, &pts(&[&[0], &[1], &[3]])).unwrap();
        assert_eq!(b.vertices(), &pts(&[&[0], &[3]])[..]);
        assert_eq!(b.volume(), &rat(3, 1));
        assert_eq!(b.facets().len(), 2);
        assert!(b.cross_check());
    }

    #[test]
    fn point() {
        let b = OkounkovBody::from_points(1, &pts(&[&[0]])).unwrap();
        assert_eq!(b.affine_dim(), Some(0));
        assert_eq!(b.volume(), &rat(0, 1));
        assert_eq!(b.count_lattice_points(3), 1);
    }

    #[test]
    fn cube_and_simplex() {
        let cube = pts(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
            &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        let b = OkounkovBody::from_points(3, &cube).unwrap();
        assert_eq!(b.volume(), &rat(1, 1));
        assert_eq!(b.facets().len(), 6);
        assert_eq!(b.vertices().len(), 8);
        assert!(b.cross_check());
        for k in 1..5 {
            assert_eq!(b.count_lattice_points(k), (k + 1).pow(3));
        }
        let s = OkounkovBody::from_points(3, &pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 0, 0]])).unwrap();
        assert_eq!(s.volume(), &rat(4, 3));
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn lower_dimensional_in_space() {
        let b = OkounkovBody::from_points(3, &pts(&[&[0, 0, 0], &[1, 1, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(b.affine_dim(), Some(2));
        assert_eq!(b.equations().len(), 1);
        assert_eq!(b.facets().len(), 3);
        assert!(b.cross_check());
        assert!(b.contains(&[rat(1, 4), rat(1, 4), rat(1, 2)]));
        assert!(!b.contains(&[rat(1, 4), rat(0, 1), rat(1, 2)]));
    }

    #[test]
    fn slicing_square_by_diagonal() {
        let sq = OkounkovBody::from_points(2, &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        let diag = Facet {
            normal: vec![rat(1, 1), rat(-1, 1)],
            offset: rat(0, 1),
        };
        let cut = sq.intersect_affine(&[diag]).unwrap();
        assert_eq!(cut.vertices(), &pts(&[&[0, 0], &[2, 2]])[..]);
        let away = Facet {
            normal: vec![rat(1, 1), rat(0, 1)],
            offset: rat(5, 1),
        };
        assert!(sq.intersect_affine(&[away]).unwrap().is_empty());
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
    }
}
