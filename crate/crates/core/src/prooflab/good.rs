//! Good sequences and their telescoping weights.
//!
//! A full sequence is good when its k vertices span exactly ℓ edges and
//! the last vertex is non-isolated in the set; shorter sequences are good
//! when they extend to a good full sequence. The weight of an extension
//! step is 1 except at the last position, where it is 1/m(A); the product
//! of step weights over normalizing sums telescopes to total mass 1.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::interval::{certified_cmp, e_interval, RatInterval};
use crate::set::{factorial, VertexSet};
use crate::{Error, Hypergraph, Result};

/// Ceiling for exhaustive sequence work: factorial blowup must refuse
/// loudly instead of hanging.
pub const GOOD_SEQ_MAX_N: usize = 10;

/// Shared context for good-sequence queries on one (hypergraph, k, ℓ).
pub struct GoodSequences<'a> {
    h: &'a Hypergraph,
    k: usize,
    ell: usize,
    n: usize,
    /// prefix-set -> whether it extends to a good full sequence
    extendable: RefCell<HashMap<u128, bool>>,
}

impl<'a> GoodSequences<'a> {
    pub fn new(h: &'a Hypergraph, k: usize, ell: usize) -> Result<GoodSequences<'a>> {
        let n = h.vertex_count();
        if n > GOOD_SEQ_MAX_N {
            return Err(Error::TooManyVertices { n, max: GOOD_SEQ_MAX_N });
        }
        if k > n {
            return Err(Error::KExceedsN { k, n });
        }
        if ell < 1 {
            return Err(Error::InvalidParameter(
                "good sequences require ell >= 1".into(),
            ));
        }
        Ok(GoodSequences {
            h,
            k,
            ell,
            n,
            extendable: RefCell::new(HashMap::new()),
        })
    }

    fn profile(&self, mask: VertexSet) -> (usize, usize) {
        let p = self.h.subset_profile(mask).expect("in-range subset");
        (p.edges_within, p.non_isolated)
    }

    fn last_vertex_active(&self, mask: VertexSet, v: usize) -> bool {
        let p = self.h.subset_profile(mask).expect("in-range subset");
        p.within_degrees[&v] > 0
    }

    /// Whether the set `mask` (of size < k) extends to a good sequence.
    fn extendable_set(&self, mask: VertexSet) -> bool {
        if let Some(&cached) = self.extendable.borrow().get(&mask.0) {
            return cached;
        }
        let size = mask.len();
        debug_assert!(size < self.k);
        let (e, _) = self.profile(mask);
        let result = if e >= self.ell {
            // a proper prefix of a good sequence has strictly fewer than ℓ
            // edges: the last vertex always closes at least one edge
            false
        } else {
            (0..self.n).filter(|&v| !mask.contains(v)).any(|v| {
                let next = mask.union(VertexSet::singleton(v));
                if size + 1 == self.k {
                    let (e_full, _) = self.profile(next);
                    e_full == self.ell && self.last_vertex_active(next, v)
                } else {
                    self.extendable_set(next)
                }
            })
        };
        self.extendable.borrow_mut().insert(mask.0, result);
        result
    }

    /// Whether a (possibly empty) prefix is good.
    pub fn is_good(&self, prefix: &[usize]) -> Result<bool> {
        let mask = VertexSet::from_vertices(prefix, self.n)?;
        if mask.len() != prefix.len() {
            return Err(Error::DuplicateVertices);
        }
        if prefix.len() > self.k {
            return Ok(false);
        }
        if prefix.len() == self.k {
            let (e, _) = self.profile(mask);
            return Ok(e == self.ell && self.last_vertex_active(mask, *prefix.last().unwrap()));
        }
        Ok(self.extendable_set(mask))
    }

    /// Step weight of a good sequence: 1 below length k, 1/m(A) at k.
    pub fn step_weight(&self, prefix: &[usize]) -> Result<BigRational> {
        if prefix.len() < self.k {
            return Ok(BigRational::one());
        }
        let mask = VertexSet::from_vertices(prefix, self.n)?;
        let (_, m) = self.profile(mask);
        Ok(BigRational::new(BigInt::one(), BigInt::from(m)))
    }

    /// Normalizer: the sum of step weights over good one-step extensions.
    pub fn extension_weight_sum(&self, prefix: &[usize]) -> Result<BigRational> {
        let mask = VertexSet::from_vertices(prefix, self.n)?;
        if mask.len() != prefix.len() {
            return Err(Error::DuplicateVertices);
        }
        let mut sum = BigRational::zero();
        for v in (0..self.n).filter(|&v| !mask.contains(v)) {
            let mut ext: Vec<usize> = prefix.to_vec();
            ext.push(v);
            if self.is_good(&ext)? {
                sum += self.step_weight(&ext)?;
            }
        }
        Ok(sum)
    }

    /// Telescoping weight of a good sequence.
    pub fn rho(&self, seq: &[usize]) -> Result<BigRational> {
        if !self.is_good(seq)? {
            return Err(Error::InvalidParameter(
                "rho is defined on good sequences only".into(),
            ));
        }
        let mut value = BigRational::one();
        for j in 1..=seq.len() {
            let denom = self.extension_weight_sum(&seq[..j - 1])?;
            value *= self.step_weight(&seq[..j])? / denom;
        }
        Ok(value)
    }

    /// Exact sum of the telescoping weights over all good j-sequences.
    ///
    /// Errors with `DefinedEmpty` if no good sequence exists at all.
    pub fn sum_rho_over_good(&self, j: usize) -> Result<BigRational> {
        if j < 1 || j > self.k {
            return Err(Error::InvalidParameter(format!(
                "sequence length {j} outside 1..=k"
            )));
        }
        if !self.is_good(&[])? {
            return Err(Error::DefinedEmpty(format!(
                "no good sequence for k = {}, ell = {}",
                self.k, self.ell
            )));
        }
        let mut total = BigRational::zero();
        let mut prefix: Vec<usize> = Vec::with_capacity(j);
        self.sum_rho_rec(&mut prefix, BigRational::one(), j, &mut total)?;
        Ok(total)
    }

    fn sum_rho_rec(
        &self,
        prefix: &mut Vec<usize>,
        partial: BigRational,
        j: usize,
        total: &mut BigRational,
    ) -> Result<()> {
        if prefix.len() == j {
            *total += partial;
            return Ok(());
        }
        let denom = self.extension_weight_sum(prefix)?;
        for v in 0..self.n {
            if prefix.contains(&v) {
                continue;
            }
            prefix.push(v);
            if self.is_good(prefix)? {
                let contrib = &partial * self.step_weight(prefix)? / &denom;
                self.sum_rho_rec(prefix, contrib, j, total)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    /// The labeling-independent normalizer at the last step, divided by n.
    ///
    /// For a k-set A with e(A) = ℓ and a chosen non-isolated last vertex,
    /// this is the sum over outside vertices v with exactly deg_A(v_k)
    /// partial edges into A' of 1/(m(A' ∪ {v})), scaled by 1/n. The
    /// normalizer of any labeling of A' equals this value times n.
    pub fn last_step_constant(&self, a: VertexSet, v_k: usize) -> Result<BigRational> {
        let a_prime = a.difference(VertexSet::singleton(v_k));
        let d = {
            let p = self.h.subset_profile(a)?;
            p.within_degrees[&v_k]
        };
        let mut c = BigRational::zero();
        for v in 0..self.n {
            if a_prime.contains(v) {
                continue;
            }
            let fam = self.h.neighborhood_family(v, a_prime)?;
            if fam.len() == d {
                let joined = a_prime.union(VertexSet::singleton(v));
                let (_, m) = self.profile(joined);
                c += BigRational::new(BigInt::one(), BigInt::from(m));
            }
        }
        Ok(c / BigRational::from_integer(BigInt::from(self.n)))
    }
}

/// Outcome of the per-set labeling-sum inequality.
#[derive(Clone, Debug)]
pub struct PerSetRho {
    /// Exact sum of ρ over all labelings of A∖{v_k} (last vertex fixed).
    pub lhs: BigRational,
    /// Enclosure of (1/m(A)) ((k - rℓ)/k) e k!/n^k at 256 bits.
    pub rhs: RatInterval,
    pub pass: bool,
}

/// Checks the per-set inequality: the ρ-mass of the labelings of A with a
/// fixed non-isolated last vertex is at least
/// (1/m(A)) ((k-rℓ)/k) e k!/n^k.
pub fn per_set_rho_bound(
    h: &Hypergraph,
    a: VertexSet,
    v_k: usize,
    k: usize,
    ell: usize,
    r: usize,
) -> Result<PerSetRho> {
    if a.len() != k {
        return Err(Error::InvalidParameter(format!(
            "A has {} vertices, expected k = {k}",
            a.len()
        )));
    }
    if r * ell >= k || ell < 1 {
        return Err(Error::Inapplicable {
            what: "per-set rho inequality".into(),
            requirement: "1 <= ell < k/r".into(),
        });
    }
    let ctx = GoodSequences::new(h, k, ell)?;
    let profile = h.subset_profile(a)?;
    if profile.edges_within != ell {
        return Err(Error::Inapplicable {
            what: "per-set rho inequality".into(),
            requirement: format!("e(A) = ell = {ell}"),
        });
    }
    if !a.contains(v_k) || profile.within_degrees[&v_k] == 0 {
        return Err(Error::Inapplicable {
            what: "per-set rho inequality".into(),
            requirement: "v_k must be a non-isolated member of A".into(),
        });
    }
    let members: Vec<usize> = a.difference(VertexSet::singleton(v_k)).to_vec();
    let mut lhs = BigRational::zero();
    let mut labeling: Vec<usize> = Vec::with_capacity(k);
    sum_over_labelings(&ctx, &members, v_k, &mut labeling, BigRational::one(), &mut lhs)?;

    let m_a = profile.non_isolated;
    let scale = BigRational::new(BigInt::from(k - r * ell), BigInt::from(k))
        * BigRational::new(BigInt::one(), BigInt::from(m_a))
        * BigRational::new(
            BigInt::from(factorial(k)),
            BigInt::from(h.vertex_count()).pow(k as u32),
        );
    let make = |bits: u32| e_interval(bits).scale(&scale);
    let pass = certified_cmp(&lhs, make)? != std::cmp::Ordering::Less;
    Ok(PerSetRho {
        lhs,
        rhs: make(256),
        pass,
    })
}

/// DFS over labelings of A' sharing prefix normalizers; at each leaf the
/// full sequence (labeling, v_k) contributes its telescoped weight.
fn sum_over_labelings(
    ctx: &GoodSequences,
    members: &[usize],
    v_k: usize,
    labeling: &mut Vec<usize>,
    partial: BigRational,
    total: &mut BigRational,
) -> Result<()> {
    let denom = ctx.extension_weight_sum(labeling)?;
    if labeling.len() == members.len() {
        labeling.push(v_k);
        let contrib = &partial * ctx.step_weight(labeling)? / &denom;
        labeling.pop();
        *total += contrib;
        return Ok(());
    }
    for &v in members {
        if labeling.contains(&v) {
            continue;
        }
        labeling.push(v);
        // every prefix drawn from A' is good: the full labeling closes
        // with the non-isolated v_k; weight 1 below length k
        let contrib = &partial / &denom;
        sum_over_labelings(ctx, members, v_k, labeling, contrib, total)?;
        labeling.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single edge {0,1} plus isolated 2.
    fn edge_plus_isolated() -> Hypergraph {
        Hypergraph::graph(3, &[(0, 1)]).unwrap()
    }

    #[test]
    fn goodness_examples() {
        let h = edge_plus_isolated();
        let ctx = GoodSequences::new(&h, 3, 1).unwrap();
        // (2,0,1) is good: last vertex 1 is non-isolated in {0,1,2}
        assert!(ctx.is_good(&[2, 0, 1]).unwrap());
        // (0,1,2) is not: the isolated vertex closes the sequence
        assert!(!ctx.is_good(&[0, 1, 2]).unwrap());
        // empty prefix is good precisely because a good sequence exists
        assert!(ctx.is_good(&[]).unwrap());
        assert!(ctx.is_good(&[0, 0]).is_err());

        // ℓ=0 is rejected up front
        assert!(GoodSequences::new(&h, 3, 0).is_err());
    }

    #[test]
    fn rho_sums_to_one_small() {
        // single edge + isolated vertex, k=3, ℓ=1
        let h = edge_plus_isolated();
        let ctx = GoodSequences::new(&h, 3, 1).unwrap();
        for j in 1..=3 {
            assert!(ctx.sum_rho_over_good(j).unwrap().is_one(), "j = {j}");
        }

        // P4 path, k=3, ℓ=1
        let p4 = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ctx = GoodSequences::new(&p4, 3, 1).unwrap();
        for j in 1..=3 {
            assert!(ctx.sum_rho_over_good(j).unwrap().is_one(), "j = {j}");
        }
    }

    #[test]
    fn rho_empty_when_ell_unreachable() {
        let h = edge_plus_isolated();
        let ctx = GoodSequences::new(&h, 2, 1).unwrap();
        // k=2, ℓ=1 is reachable: the edge itself
        assert!(ctx.sum_rho_over_good(2).unwrap().is_one());
        // ℓ=3 on a single-edge graph is not
        let ctx = GoodSequences::new(&h, 3, 3).unwrap();
        assert!(matches!(
            ctx.sum_rho_over_good(1),
            Err(Error::DefinedEmpty(_))
        ));
    }

    #[test]
    fn normalizer_is_labeling_independent() {
        let h = Hypergraph::graph(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let k = 4;
        let ell = 2;
        let ctx = GoodSequences::new(&h, k, ell).unwrap();
        let a = VertexSet::from_iter([0, 1, 2, 3]);
        // pick a non-isolated last vertex
        for v_k in [0usize, 1, 2] {
            let members: Vec<usize> = a.difference(VertexSet::singleton(v_k)).to_vec();
            let c = ctx.last_step_constant(a, v_k).unwrap();
            assert!(c > BigRational::zero());
            let mut seen: Option<BigRational> = None;
            permute(&members, &mut |order| {
                let lam = ctx.extension_weight_sum(order).unwrap();
                match &seen {
                    None => seen = Some(lam.clone()),
                    Some(first) => assert_eq!(&lam, first),
                }
                // normalizer equals the constant times n
                assert_eq!(
                    lam,
                    &c * BigRational::from_integer(BigInt::from(h.vertex_count()))
                );
            });
        }
    }

    #[test]
    fn per_set_inequality_on_the_edge_graph() {
        // single edge + isolateds, n=4, k=3, ℓ=1, r=2
        let h = Hypergraph::graph(4, &[(0, 1)]).unwrap();
        let a = VertexSet::from_iter([0, 1, 2]);
        let out = per_set_rho_bound(&h, a, 1, 3, 1, 2).unwrap();
        assert!(out.pass, "lhs = {}, rhs <= {}", out.lhs, out.rhs.hi);

        // n = k: the lhs sums all full labelings; cross-check against a
        // direct rho summation restricted to sequences ending in v_k
        let h = edge_plus_isolated();
        let a = VertexSet::full(3);
        let ctx = GoodSequences::new(&h, 3, 1).unwrap();
        let out = per_set_rho_bound(&h, a, 0, 3, 1, 2).unwrap();
        let mut direct = BigRational::zero();
        permute(&[1, 2], &mut |order| {
            let mut seq = order.to_vec();
            seq.push(0);
            if ctx.is_good(&seq).unwrap() {
                direct += ctx.rho(&seq).unwrap();
            }
        });
        assert_eq!(out.lhs, direct);
    }

    fn permute(items: &[usize], f: &mut impl FnMut(&[usize])) {
        fn rec(current: &mut Vec<usize>, rest: &[usize], f: &mut impl FnMut(&[usize])) {
            if rest.is_empty() {
                f(current);
                return;
            }
            for (i, &x) in rest.iter().enumerate() {
                current.push(x);
                let mut next: Vec<usize> = rest.to_vec();
                next.remove(i);
                rec(current, &next, f);
                current.pop();
            }
        }
        rec(&mut Vec::new(), items, f);
    }
}
