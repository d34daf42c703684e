//! Levelwise-finite simplicial sets, simplicial maps and elementary
//! constructions (standard simplices, spheres, products, quotients).

pub mod formal;
pub mod json;
pub mod model;
pub mod product;
pub mod quotient;
pub mod smap;
pub mod sset;
pub mod standard;

pub use formal::{Cell, Formal, Surjection};
pub use model::{realize, Realized, SimplicialModel};
pub use product::{product, swap, Product};
pub use quotient::{quotient, Quotient, SimplicialRelation};
pub use smap::SMap;
pub use sset::{SSet, SSetListing};
pub use standard::{ordered_complex, standard_space, StandardKind};

/// Builds and validates a simplicial set from a listing.
pub fn build_sset(listing: &SSetListing) -> crate::Result<SSet> {
    SSet::from_listing(listing)
}
