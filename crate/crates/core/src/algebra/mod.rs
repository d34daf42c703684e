//! Integer and modular linear algebra, finite groups, finitely presented
//! groups and their finite quotients, and group cohomology.

pub mod catalogue;
pub mod complex;
pub mod finab;
pub mod group;
pub mod lowindex;
pub mod module;
pub mod presentation;
pub mod primary;
pub mod snf;

pub use catalogue::{catalogue, group_by_name, group_name, Catalogue};
pub use finab::{AbGroup, AbHom, FinAb};
pub use group::FiniteGroup;
pub use lowindex::{enumerate_finite_quotients, low_index_subgroups, CosetTable, EpiClass};
pub use module::{group_cohomology, ModuleAction};
pub use presentation::{Presentation, Word};
pub use snf::{smith_normal_form, IntMatrix, Smith};

/// Abelianization of a finitely presented group.
pub fn abelianization(p: &Presentation) -> FinAb {
    p.abelianization()
}
