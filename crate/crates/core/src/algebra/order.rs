use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use super::exponent::ExponentVector;
use crate::{Error, Result};

/// Element `(m, u)` of `ℕ × ℤⁿ`, the codomain of the extended valuation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub level: u64,
    pub value: ExponentVector,
}

impl BiDegree {
    pub fn new(level: u64, value: impl Into<ExponentVector>) -> Self {
        BiDegree {
            level,
            value: value.into(),
        }
    }

    pub fn zero(n: usize) -> Self {
        BiDegree {
            level: 0,
            value: ExponentVector::zero(n),
        }
    }

    /// The vector `(m, u₁, …, uₙ)` in `ℤⁿ⁺¹`.
    pub fn as_lattice_vector(&self) -> alloc::vec::Vec<i64> {
        let mut v = alloc::vec::Vec::with_capacity(self.value.len() + 1);
        v.push(self.level as i64);
        v.extend_from_slice(self.value.entries());
        v
    }
}

impl Add for &BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: &BiDegree) -> BiDegree {
        BiDegree {
            level: self.level + rhs.level,
            value: &self.value + &rhs.value,
        }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.value)
    }
}

/// Composite order on `ℕ × ℤⁿ`: a higher level is *smaller*; equal levels
/// compare their values lexicographically.
pub fn compare_composite(a: &BiDegree, b: &BiDegree) -> Result<Ordering> {
    if a.value.len() != b.value.len() {
        return Err(Error::DimensionMismatch {
            expected: a.value.len(),
            found: b.value.len(),
        });
    }
    Ok(match b.level.cmp(&a.level) {
        Ordering::Equal => a.value.cmp(&b.value),
        o => o,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let a = BiDegree::new(2, vec![0]);
        let b = BiDegree::new(1, vec![0]);
        assert_eq!(compare_composite(&a, &b).unwrap(), Ordering::Less);
        let a = BiDegree::new(1, vec![0, 1]);
        let b = BiDegree::new(1, vec![0, 2]);
        assert_eq!(compare_composite(&a, &b).unwrap(), Ordering::Less);
        let a = BiDegree::new(3, vec![5, -2]);
        assert_eq!(compare_composite(&a, &a.clone()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn length_mismatch() {
        let a = BiDegree::new(1, vec![0]);
        let b = BiDegree::new(1, vec![0, 0]);
        assert!(matches!(
            compare_composite(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn arb(n: usize) -> impl Strategy<Value = BiDegree> {
        (0u64..50, prop::collection::vec(-50i64..=50, n))
            .prop_map(|(m, u)| BiDegree::new(m, u))
    }

    proptest! {
        #[test]
        fn translation_invariant(a in arb(3), b in arb(3), c in arb(3)) {
            prop_assert_eq!(
                compare_composite(&a, &b).unwrap(),
                compare_composite(&(&a + &c), &(&b + &c)).unwrap()
            );
        }

        #[test]
        fn total_and_antisymmetric(a in arb(2), b in arb(2), c in arb(2)) {
            let ab = compare_composite(&a, &b).unwrap();
            prop_assert_eq!(ab.reverse(), compare_composite(&b, &a).unwrap());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            let mut v: Vec<BiDegree> = vec![a, b, c];
            v.sort_by(|x, y| compare_composite(x, y).unwrap());
            prop_assert!(compare_composite(&v[0], &v[2]).unwrap() != Ordering::Greater);
        }
    }
}
