//! Exact univariate real-root machinery over ℚ.

mod isolate;
mod sturm;
pub(crate) mod unipoly;

pub use isolate::{
    gap_certified, isolate_real_roots, positive_gap_radius, refine_interval, root_bound, GapCheck, IsolatingInterval,
    Refiner,
};
pub use sturm::{count_real_roots, count_real_roots_strict, num, sturm_sequence, tarski_query, Bound};
pub use unipoly::UniPoly;


use crate::error::Result;

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    p.squarefree_part()
}
