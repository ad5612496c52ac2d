use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BiDegree, ExponentVector, Rational};
use crate::{Error, Result};

use super::linalg::lattice_index;
use super::polytope::OkounkovBody;

/// Finitely generated subsemigroup of `ℕ × ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSemigroup {
    rank: usize,
    generators: Vec<BiDegree>,
}

impl ValueSemigroup {
    pub fn new(rank: usize, generators: Vec<BiDegree>) -> Result<Self> {
        for g in &generators {
            if g.level == 0 {
                return Err(Error::InvalidDatum(
                    "semigroup generators need level ≥ 1".into(),
                ));
            }
            if g.value.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: g.value.len(),
                });
            }
        }
        Ok(ValueSemigroup { rank, generators })
    }

    /// Rank `n` of the value part.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[BiDegree] {
        &self.generators
    }

    /// Sorted, de-duplicated generator list.
    pub fn canonical_generators(&self) -> Vec<BiDegree> {
        let mut g = self.generators.clone();
        g.sort();
        g.dedup();
        g
    }

    /// Index of the generated group in `ℤⁿ⁺¹`; `None` when it has lower rank.
    pub fn lattice_index(&self) -> Option<u128> {
        let rows: Vec<Vec<i64>> = self.generators.iter().map(BiDegree::as_lattice_vector).collect();
        lattice_index(&rows, self.rank + 1)
    }

    /// Whether the generators span all of `ℤⁿ⁺¹` as a group.
    pub fn generates_full_lattice(&self) -> bool {
        self.lattice_index() == Some(1)
    }

    /// Sets of values at each level `0..=max_level`.
    pub fn level_sets(&self, max_level: u64) -> Vec<BTreeSet<ExponentVector>> {
        let mut sets: Vec<BTreeSet<ExponentVector>> = Vec::with_capacity(max_level as usize + 1);
        sets.push(BTreeSet::from([ExponentVector::zero(self.rank)]));
        for j in 1..=max_level {
            let mut s = BTreeSet::new();
            for g in &self.generators {
                if g.level <= j {
                    for v in &sets[(j - g.level) as usize] {
                        s.insert(v + &g.value);
                    }
                }
            }
            sets.push(s);
        }
        sets
    }

    /// Whether `(k, u)` lies in the semigroup.
    pub fn contains(&self, b: &BiDegree) -> bool {
        self.level_sets(b.level)[b.level as usize].contains(&b.value)
    }
}

/// Number of distinct values at level `k`.
pub fn semigroup_hilbert(s: &ValueSemigroup, k: u64) -> u64 {
    s.level_sets(k)[k as usize].len() as u64
}

/// `H_S(k)` for `k = 0..=max_level`.
pub fn hilbert_function(s: &ValueSemigroup, max_level: u64) -> Vec<u64> {
    s.level_sets(max_level).iter().map(|x| x.len() as u64).collect()
}

/// Convex hull of the normalized generators `u/k`.
pub fn okounkov_body(s: &ValueSemigroup) -> Result<OkounkovBody> {
    if s.generators.is_empty() {
        return Err(Error::EmptySemigroup);
    }
    let points: Vec<Vec<Rational>> = s
        .generators
        .iter()
        .map(|g| {
            let k = Rational::from_integer((g.level as i64).into());
            g.value
                .entries()
                .iter()
                .map(|&x| Rational::from_integer(x.into()) / &k)
                .collect()
        })
        .collect();
    OkounkovBody::from_points(s.rank, &points)
}

/// Every sum of exactly-level-`k` generator multisets, by exhaustive enumeration.
pub fn brute_force_level(s: &ValueSemigroup, k: u64) -> BTreeSet<ExponentVector> {
    fn rec(
        gens: &[BiDegree],
        start: usize,
        left: u64,
        acc: ExponentVector,
        out: &mut BTreeSet<ExponentVector>,
    ) {
        if left == 0 {
            out.insert(acc);
            return;
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if g.level <= left {
                rec(gens, i, left - g.level, &acc + &g.value, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(&s.generators, 0, k, ExponentVector::zero(s.rank), &mut out);
    out
}

/// Decomposes `target` as a sum of generators: multiplicities per generator,
/// preferring earlier generators, or `None` if `target ∉ S`.
pub fn decompose(gens: &[BiDegree], target: &BiDegree) -> Option<Vec<u32>> {
    fn rec(
        gens: &[BiDegree],
        i: usize,
        level: u64,
        value: &ExponentVector,
        mult: &mut Vec<u32>,
        dead: &mut BTreeSet<(usize, u64, ExponentVector)>,
    ) -> bool {
        if level == 0 {
            return value.is_zero();
        }
        if i == gens.len() || dead.contains(&(i, level, value.clone())) {
            return false;
        }
        let g = &gens[i];
        let max = level / g.level;
        for c in (0..=max).rev() {
            let rest = value - &g.value.scaled(c as i64);
            mult[i] = c as u32;
            if rec(gens, i + 1, level - c * g.level, &rest, mult, dead) {
                return true;
            }
        }
        mult[i] = 0;
        dead.insert((i, level, value.clone()));
        false
    }
    let mut mult = vec![0u32; gens.len()];
    let mut dead = BTreeSet::new();
    rec(gens, 0, target.level, &target.value, &mut mult, &mut dead).then_some(mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn elliptic() -> ValueSemigroup {
        ValueSemigroup::new(
            1,
            vec![BiDegree::new(1, vec![0]), BiDegree::new(1, vec![1]), BiDegree::new(1, vec![3])],
        )
        .unwrap()
    }

    #[test]
    fn elliptic_counts() {
        let s = elliptic();
        assert_eq!(semigroup_hilbert(&s, 0), 1);
        assert_eq!(semigroup_hilbert(&s, 1), 3);
        assert_eq!(semigroup_hilbert(&s, 2), 6);
        let two: Vec<i64> = s.level_sets(2)[2].iter().map(|v| v[0]).collect();
        assert_eq!(two, vec![0, 1, 2, 3, 4, 6]);
        for k in 1..=10 {
            assert_eq!(semigroup_hilbert(&s, k), 3 * k);
            assert_eq!(brute_force_level(&s, k), s.level_sets(k)[k as usize]);
        }
        assert!(s.generates_full_lattice());
    }

    #[test]
    fn bodies() {
        let b = okounkov_body(&elliptic()).unwrap();
        assert_eq!(b.vertices(), &[vec![rat(0, 1)], vec![rat(3, 1)]][..]);
        assert_eq!(b.volume(), &rat(3, 1));
        let pt = ValueSemigroup::new(1, vec![BiDegree::new(1, vec![0])]).unwrap();
        let b = okounkov_body(&pt).unwrap();
        assert_eq!(b.vertices(), &[vec![rat(0, 1)]][..]);
        assert_eq!(b.volume(), &rat(0, 1));
        assert!(!pt.generates_full_lattice());
        let empty = ValueSemigroup::new(1, vec![]).unwrap();
        assert_eq!(okounkov_body(&empty), Err(Error::EmptySemigroup));
    }

    #[test]
    fn decomposition() {
        let s = elliptic();
        let m = decompose(s.generators(), &BiDegree::new(2, vec![4])).unwrap();
        assert_eq!(m, vec![0, 1, 1]);
        assert!(decompose(s.generators(), &BiDegree::new(2, vec![5])).is_none());
    }
}
