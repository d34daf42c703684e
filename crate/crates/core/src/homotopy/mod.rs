//! Fundamental groups, coverings, Hurewicz comparisons and weak equivalences.

pub mod coverings;
pub mod fundamental;
pub mod hurewicz;
pub mod pi2;
pub mod weq;
