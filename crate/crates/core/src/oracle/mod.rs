//! Brute-force ground truth: Lie rings enumerated directly and the class-2
//! Lazard correspondence to groups.

mod group;
mod lie;

pub use group::{frattini_central_check, lazard_group, GroupTable};
pub use lie::{
    count_by_canonical_form, enumerate_lie_rings, generated_aut_order, subspaces, unit_generators, BracketTable,
    LieCensus, StratumCensus,
};
