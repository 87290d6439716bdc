//! Modules over `Z[G]`: `Am(alpha)`, `B'(alpha)`, the filtration of `B` and
//! the torsion bounds attached to it.

mod bound;
mod filtration;
mod group_ring;
mod presentation;

pub use bound::{all_torsion_bounds, best_torsion_bound, torsion_bound, TorsionBoundParams};
pub use filtration::{filtration_subquotient, Filtration, ModuleKind};
pub use group_ring::GroupRingElement;
pub use presentation::{module_rank_torsion, present_am, present_bprime, ModuleElement, ModulePresentation};
