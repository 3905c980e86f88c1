//! Executable counterparts of the counting devices used in the proofs:
//! good sequences and their telescoping weights, pleasant/nice pair
//! classification, tidy/tame labelings, the sequential random-choice
//! procedure, degree partitions and the exact block-intersection law.
//!
//! Everything here is exact. Irrational thresholds are compared by
//! squaring to integer inequalities; probabilities mixing rationals with
//! a single square root use the quadratic-extension arithmetic in
//! [`quad`]; anything else goes through outward-rounded intervals.

pub mod degrees;
pub mod good;
pub mod pairs;
pub mod quad;
pub mod sequences;

pub use degrees::{degree_partition, hypergeometric_pj, is_interesting, DegreePartition};
pub use good::{per_set_rho_bound, GoodSequences, PerSetRho};
pub use pairs::{
    classify_pair, count_partner_sets, random_b_success, PairClassification, PairFlavor,
    PartnerCount, RandomBLemma, RandomBReport, ZThreshold,
};
pub use quad::Quad;
pub use sequences::{
    count_tame_labelings, count_tidy_labelings, is_tame, is_tidy, procedure_tree, ProcedureLeaf,
    ProcedureTree, SequenceFlavor,
};
