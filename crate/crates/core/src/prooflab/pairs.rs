//! Pleasant and nice pair classification, the per-core partner-count
//! bounds, and the exact success probability of the random core draw.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval::{certified_cmp, root_interval, sqrt_interval, RatInterval};
use crate::set::{factorial, k_subsets_of, VertexSet};
use crate::{Error, Hypergraph, PairStats, Result};

use super::quad::Quad;

/// Which pair notion is being classified.
#[derive(Clone, Debug, PartialEq)]
pub enum PairFlavor {
    /// All stranded vertices forbidden; both sides of the split large.
    Pleasant { eps: BigRational },
    /// Connected count in a band, few stranded vertices relative to a.
    Nice { z: ZThreshold },
}

/// Lower threshold for the connected count of a nice pair: either an
/// exact rational or a rational multiple of sqrt(k).
#[derive(Clone, Debug, PartialEq)]
pub enum ZThreshold {
    Exact(BigRational),
    /// z = coeff * sqrt(k).
    SqrtKTimes(BigRational),
}

impl ZThreshold {
    pub fn is_positive(&self) -> bool {
        match self {
            ZThreshold::Exact(q) => q.is_positive(),
            ZThreshold::SqrtKTimes(q) => q.is_positive(),
        }
    }

    /// Exact test z <= h.
    pub fn le_count(&self, h: usize, k: usize) -> bool {
        let h_rat = BigRational::from_integer(BigInt::from(h));
        match self {
            ZThreshold::Exact(q) => *q <= h_rat,
            ZThreshold::SqrtKTimes(q) => {
                if !q.is_positive() {
                    return true;
                }
                // q sqrt(k) <= h  <=>  q^2 k <= h^2
                q * q * BigRational::from_integer(BigInt::from(k)) <= &h_rat * &h_rat
            }
        }
    }

    /// Enclosure of sqrt(z).
    pub fn sqrt_interval(&self, k: usize, bits: u32) -> RatInterval {
        match self {
            ZThreshold::Exact(q) => sqrt_interval(q, bits),
            ZThreshold::SqrtKTimes(q) => sqrt_interval(q, bits).mul(&root_interval(
                &BigRational::from_integer(BigInt::from(k)),
                4,
                bits,
            )),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ZThreshold::Exact(q) => q.to_string(),
            ZThreshold::SqrtKTimes(q) => format!("{q}*sqrt(k)"),
        }
    }
}

/// Per-condition breakdown of one classification.
#[derive(Clone, Debug)]
pub struct PairClassification {
    pub stats: PairStats,
    pub flavor: PairFlavor,
    /// Conditions (i)-(iv) of the relevant definition, in order.
    pub conditions: [bool; 4],
}

impl PairClassification {
    pub fn verdict(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

/// Exact test h >= eps sqrt(k) / (4 sqrt(r)), by squaring.
pub(crate) fn side_large_enough(h: usize, eps: &BigRational, k: usize, r: usize) -> bool {
    // 4 h sqrt(r) >= eps sqrt(k)  <=>  16 h^2 r >= eps^2 k
    let lhs = BigRational::from_integer(BigInt::from(16 * h * h * r));
    let rhs = eps * eps * BigRational::from_integer(BigInt::from(k));
    lhs >= rhs
}

/// Classifies (A, B) per the chosen flavor, condition by condition.
pub fn classify_pair(
    h: &Hypergraph,
    a: VertexSet,
    b: VertexSet,
    k: usize,
    ell: usize,
    r: usize,
    flavor: &PairFlavor,
) -> Result<PairClassification> {
    let stats = h.pair_stats(a, b)?;
    let profile = h.subset_profile(a)?;
    let shape_ok = a.len() == k && profile.edges_within == ell;
    let a_minus_b = a.difference(b).len();
    let conditions = match flavor {
        PairFlavor::Pleasant { eps } => [
            shape_ok,
            stats.stranded == 0,
            side_large_enough(stats.connected, eps, k, r),
            side_large_enough(a_minus_b - stats.connected, eps, k, r),
        ],
        PairFlavor::Nice { z } => {
            let h_cnt = stats.connected;
            [
                shape_ok,
                // z <= h <= sqrt(k)/2, upper side by squaring
                z.le_count(h_cnt, k) && 4 * h_cnt * h_cnt <= k,
                // |A\B| >= 2 sqrt(k) f  <=>  |A\B|^2 >= 4 k f^2
                a_minus_b * a_minus_b >= 4 * k * stats.stranded * stats.stranded,
                // |A\B| >= sqrt(k)
                a_minus_b * a_minus_b >= k,
            ]
        }
    };
    Ok(PairClassification {
        stats,
        flavor: flavor.clone(),
        conditions,
    })
}

/// Result of counting the partner sets of a fixed core B.
#[derive(Clone, Debug)]
pub struct PartnerCount {
    pub count: u64,
    /// Enclosure of the lemma bound at 256 bits.
    pub bound: RatInterval,
    pub pass: bool,
}

/// Counts the sets A ⊇ B with |A| = k forming a qualifying pair, and
/// checks the count against the per-core lemma bound:
/// 2 r^{1/4} eps^{-1/2} k^{-1/4} n^a/a! (pleasant) or
/// (4/3) z^{-1/2} n^a/a! (nice).
pub fn count_partner_sets(
    h: &Hypergraph,
    b: VertexSet,
    k: usize,
    ell: usize,
    r: usize,
    flavor: &PairFlavor,
) -> Result<PartnerCount> {
    let n = h.vertex_count();
    if b.len() > k {
        return Err(Error::InvalidParameter(format!(
            "core of size {} larger than k = {k}",
            b.len()
        )));
    }
    let a_size = k - b.len();
    let pool = VertexSet::full(n).difference(b);
    let mut count = 0u64;
    for extension in k_subsets_of(pool, a_size) {
        let a = b.union(extension);
        if classify_pair(h, a, b, k, ell, r, flavor)?.verdict() {
            count += 1;
        }
    }
    let normalizer = BigRational::new(
        BigInt::from(n).pow(a_size as u32),
        BigInt::from(factorial(a_size)),
    );
    let k_rat = BigRational::from_integer(BigInt::from(k));
    let r_rat = BigRational::from_integer(BigInt::from(r));
    let flavor2 = flavor.clone();
    let make = move |bits: u32| -> RatInterval {
        let coeff = match &flavor2 {
            PairFlavor::Pleasant { eps } => root_interval(&r_rat, 4, bits)
                .mul(&sqrt_interval(eps, bits).recip())
                .mul(&root_interval(&k_rat, 4, bits).recip())
                .scale(&BigRational::from_integer(BigInt::from(2))),
            PairFlavor::Nice { z } => z
                .sqrt_interval(k, bits)
                .recip()
                .scale(&BigRational::new(BigInt::from(4), BigInt::from(3))),
        };
        coeff.scale(&normalizer)
    };
    let count_rat = BigRational::from_integer(BigInt::from(count));
    let pass = certified_cmp(&count_rat, &make)? != std::cmp::Ordering::Greater;
    Ok(PartnerCount {
        count,
        bound: make(256),
        pass,
    })
}

/// The three random-core lemmas: parameters and floors.
#[derive(Clone, Debug)]
pub enum RandomBLemma {
    /// keep-probability 1 - (1/2)(rk)^{-1/2}, floor 1/2, pleasant(eps).
    PleasantHalf { eps: BigRational },
    /// z = c/(32r), keep-probability 1 - 1/(8r), floor 1/4.
    NiceLowBand { c: BigRational },
    /// z = sqrt(k)/(64r), keep-probability 1 - sqrt(k)/(16 r c), floor 1/4.
    NiceHighBand { c: BigRational },
}

/// Outcome of the random-core success computation for one target set A.
#[derive(Clone, Debug)]
pub struct RandomBReport {
    /// A meets the lemma's hypothesis on e(A) and m(A).
    pub hypothesis_met: bool,
    /// The side conditions under which the floor is proven.
    pub side_conditions_met: bool,
    /// Keep-probability lies in [0, 1].
    pub p_valid: bool,
    /// Number of qualifying cores B per kept-size |B|.
    pub success_by_size: Vec<u64>,
    /// Exact success probability in Q(sqrt(t)), when computed exactly.
    pub probability: Option<Quad>,
    /// Monte Carlo estimate when 2^|A| is out of reach.
    pub estimate: Option<f64>,
    /// The lemma floor (1/2 or 1/4).
    pub floor: BigRational,
    /// Exact comparison against the floor, when exact.
    pub meets_floor: Option<bool>,
}

/// Exhaustive ceiling: 2^|A| core subsets.
const RANDOM_B_EXACT_MAX: usize = 20;

/// Computes the probability that a random core B ⊆ A (each vertex kept
/// independently with the lemma's probability p) forms a qualifying pair
/// with A. Exact over all 2^|A| cores when |A| allows, else seeded
/// Monte Carlo; the floor is only proven under the side conditions, so it
/// is reported, not asserted.
pub fn random_b_success(
    h: &Hypergraph,
    a: VertexSet,
    k: usize,
    ell: usize,
    r: usize,
    lemma: &RandomBLemma,
    mc: Option<(u64, u64)>,
) -> Result<RandomBReport> {
    let profile = h.subset_profile(a)?;
    let m_a = profile.non_isolated;
    let k_rat = BigRational::from_integer(BigInt::from(k));
    let (hypothesis_met, side_conditions_met, flavor, p, floor) = match lemma {
        RandomBLemma::PleasantHalf { eps } => {
            let hyp = a.len() == k
                && profile.edges_within == ell
                && BigRational::from_integer(BigInt::from(m_a)) >= eps * &k_rat
                && BigRational::from_integer(BigInt::from(m_a))
                    <= (BigRational::one() - eps) * &k_rat;
            // eps^2 k >= 2^12 r
            let side = eps * eps * &k_rat
                >= BigRational::from_integer(BigInt::from(4096 * r));
            let t = (r * k) as u64;
            // p = 1 - sqrt(rk)/(2rk)
            let p = Quad::new(
                BigRational::one(),
                BigRational::new(BigInt::from(-1), BigInt::from(2 * r * k)),
                t,
            );
            let flavor = PairFlavor::Pleasant { eps: eps.clone() };
            (hyp, side, flavor, p, BigRational::new(1.into(), 2.into()))
        }
        RandomBLemma::NiceLowBand { c } => {
            let m_rat = BigRational::from_integer(BigInt::from(m_a));
            // c <= m(A) <= sqrt(k)/2
            let hyp = a.len() == k
                && profile.edges_within == ell
                && m_rat >= *c
                && 4 * m_a * m_a <= k;
            let side = *c >= BigRational::from_integer(BigInt::from(1024 * r));
            let z = ZThreshold::Exact(c / BigRational::from_integer(BigInt::from(32 * r)));
            let p = Quad::rational(
                BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(8 * r)),
                1,
            );
            let flavor = PairFlavor::Nice { z };
            (hyp, side, flavor, p, BigRational::new(1.into(), 4.into()))
        }
        RandomBLemma::NiceHighBand { c } => {
            let m_rat = BigRational::from_integer(BigInt::from(m_a));
            let hyp = a.len() == k
                && profile.edges_within == ell
                && m_rat >= *c
                && m_rat <= c * BigRational::from_integer(BigInt::from(2));
            // k >= 44^4 r^2 and sqrt(k)/2 <= c <= k/(32 r)
            let c_band = c * c * BigRational::from_integer(BigInt::from(4)) >= k_rat
                && c * BigRational::from_integer(BigInt::from(32 * r)) <= k_rat;
            let side = k >= 44usize.pow(4) * r * r && c_band;
            let z = ZThreshold::SqrtKTimes(BigRational::new(
                BigInt::one(),
                BigInt::from(64 * r),
            ));
            // p = 1 - sqrt(k)/(16 r c)
            let p = Quad::new(
                BigRational::one(),
                -BigRational::new(BigInt::one(), BigInt::from(16 * r)) / c,
                k as u64,
            );
            let flavor = PairFlavor::Nice { z };
            (hyp, side, flavor, p, BigRational::new(1.into(), 4.into()))
        }
    };
    let q = Quad::one(p.t).add(&p.scale(&BigRational::from_integer(BigInt::from(-1))));
    let p_valid = p.cmp_rational(&BigRational::zero()) != std::cmp::Ordering::Less
        && p.cmp_rational(&BigRational::one()) != std::cmp::Ordering::Greater;

    let members = a.to_vec();
    let asize = members.len();
    if asize <= RANDOM_B_EXACT_MAX {
        // exact: classify every core, group successes by kept count
        let mut success_by_size = vec![0u64; asize + 1];
        for bits in 0u64..(1 << asize) {
            let b = VertexSet::from_iter(
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, &v)| v),
            );
            if classify_pair(h, a, b, k, ell, r, &flavor)?.verdict() {
                success_by_size[b.len()] += 1;
            }
        }
        let mut prob = Quad::zero(p.t);
        for (kept, &cnt) in success_by_size.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let term = p
                .pow(kept as u32)
                .mul(&q.pow((asize - kept) as u32))
                .scale(&BigRational::from_integer(BigInt::from(cnt)));
            prob = prob.add(&term);
        }
        let meets_floor = prob.cmp_rational(&floor) != std::cmp::Ordering::Less;
        Ok(RandomBReport {
            hypothesis_met,
            side_conditions_met,
            p_valid,
            success_by_size,
            probability: Some(prob),
            estimate: None,
            floor,
            meets_floor: Some(meets_floor),
        })
    } else {
        let (samples, seed) = mc.ok_or_else(|| Error::InvalidParameter(
            format!("|A| = {asize} needs Monte Carlo; pass (samples, seed)"),
        ))?;
        let p_f = p.to_f64().clamp(0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0u64;
        for _ in 0..samples {
            let b = VertexSet::from_iter(
                members
                    .iter()
                    .copied()
                    .filter(|_| rng.gen::<f64>() < p_f),
            );
            if classify_pair(h, a, b, k, ell, r, &flavor)?.verdict() {
                hits += 1;
            }
        }
        let est = hits as f64 / samples as f64;
        Ok(RandomBReport {
            hypothesis_met,
            side_conditions_met,
            p_valid,
            success_by_size: Vec::new(),
            probability: None,
            estimate: Some(est),
            floor,
            meets_floor: None,
        })
    }
}
