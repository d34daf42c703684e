//! Twisted products, classifying spaces and Eilenberg–MacLane spaces.

pub mod bar;
pub mod borel;
pub mod bundles;
pub mod dold_kan;
pub mod twisted;

pub use bar::{bar_construction, Bar, ClassifyingSpace};
pub use borel::{borel_construction, Borel};
pub use bundles::{bundle_isomorphism, classify_bundles, BundleClassification};
pub use dold_kan::{bar_to_k1, eilenberg_maclane, path_object, PathObject};
pub use twisted::{covering_from_permutations, twisted_product, Covering, GSet, PrincipalBundle};
