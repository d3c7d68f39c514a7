//! Exact computations with relative Rota-Baxter groups on finite groups.
//!
//! The crate enumerates relative Rota-Baxter operators `R: H → G` through
//! subgroups of the semidirect product `G ⋉_φ H`, builds the skew left braces
//! and Yang-Baxter solutions they induce, and decides morphisms, ideals,
//! quotients and isoclinism for both kinds of structure.

pub mod action;
pub mod brace;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod io;
pub mod isoclinism;
pub mod maps;
pub mod perm;
pub mod rrb;
pub mod semidirect;

pub use action::{enumerate_actions, ActionTable};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupRef, Subgroup};
pub use maps::GroupHom;
pub use rrb::{RelRB, RRBSub};
pub use semidirect::SemidirectProduct;
