//! Vertex sets as fixed-width bitmasks, plus the small combinatorial
//! helpers (binomial, factorial, falling factorial) used throughout.
//!
//! Subset-statistics operations work on at most [`VertexSet::MAX_VERTICES`]
//! vertices; constructors reject anything larger. Graphs above the ceiling
//! can still be represented by [`crate::Hypergraph`] and sampled, but not
//! enumerated exhaustively.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A set of vertices drawn from `0..128`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct VertexSet(pub u128);

impl VertexSet {
    /// Largest vertex count supported by the bitmask representation.
    pub const MAX_VERTICES: usize = 128;

    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < Self::MAX_VERTICES);
        VertexSet(1u128 << v)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= Self::MAX_VERTICES);
        if n == Self::MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
        let mut mask = 0u128;
        for v in vs {
            debug_assert!(v < Self::MAX_VERTICES);
            mask |= 1u128 << v;
        }
        VertexSet(mask)
    }

    /// Checked construction from vertex indices in `0..n`.
    pub fn from_vertices(vs: &[usize], n: usize) -> Result<VertexSet> {
        let mut mask = 0u128;
        for &v in vs {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask |= 1u128 << v;
        }
        Ok(VertexSet(mask))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < Self::MAX_VERTICES && self.0 & (1u128 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All k-subsets of `pool`, in lexicographic order of member lists.
///
/// Convenience for small search spaces and for tests; the enumeration
/// engine in [`crate::enumerate`] uses the revolving-door order instead.
pub fn k_subsets_of(pool: VertexSet, k: usize) -> Vec<VertexSet> {
    let members = pool.to_vec();
    let n = members.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(VertexSet::EMPTY);
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(VertexSet::from_iter(idx.iter().map(|&i| members[i])));
        // rightmost index that can still move up
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// C(n, k) as f64, for work estimates only.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1f64;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Falling factorial (n)_t = n (n-1) ... (n-t+1), with (n)_0 = 1.
pub fn falling_factorial(n: usize, t: usize) -> BigUint {
    if t > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..t {
        acc *= BigUint::from(n - i);
    }
    acc
}

/// n^k / k! as an exact rational, the normalizer in all count bounds.
pub fn n_pow_k_over_k_fact(n: usize, k: usize) -> BigRational {
    let num = BigInt::from(n).pow(k as u32);
    let den = BigInt::from(factorial(k));
    BigRational::new(num, den)
}

pub fn big_to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Floor of sqrt(x) over the integers.
pub fn isqrt(x: usize) -> usize {
    if x < 2 {
        return x;
    }
    let mut lo = 1usize;
    let mut hi = x;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid <= x / mid {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(8, 4), BigUint::from(70u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(falling_factorial(5, 3), BigUint::from(60u32));
        assert_eq!(falling_factorial(5, 0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
    }

    #[test]
    fn subset_listing_matches_binomial() {
        for n in 0..=7usize {
            for k in 0..=n {
                let pool = VertexSet::full(n);
                let subs = k_subsets_of(pool, k);
                assert_eq!(BigUint::from(subs.len()), binomial(n, k));
                for s in &subs {
                    assert_eq!(s.len(), k);
                    assert!(s.is_subset_of(pool));
                }
            }
        }
    }

    #[test]
    fn isqrt_small() {
        for x in 0..2000usize {
            let s = isqrt(x);
            assert!(s * s <= x);
            assert!((s + 1) * (s + 1) > x);
        }
    }

    proptest! {
        #[test]
        fn set_ops_behave(vs in proptest::collection::btree_set(0usize..64, 0..20),
                          ws in proptest::collection::btree_set(0usize..64, 0..20)) {
            let a = VertexSet::from_iter(vs.iter().copied());
            let b = VertexSet::from_iter(ws.iter().copied());
            prop_assert_eq!(a.len(), vs.len());
            prop_assert_eq!(a.union(b).len(), vs.union(&ws).count());
            prop_assert_eq!(a.intersection(b).len(), vs.intersection(&ws).count());
            prop_assert_eq!(a.difference(b).len(), vs.difference(&ws).count());
            prop_assert_eq!(a.to_vec(), vs.iter().copied().collect::<Vec<_>>());
        }
    }
}
