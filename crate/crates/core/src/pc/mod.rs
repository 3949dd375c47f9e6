//! Power-commutator presentations: parsing, collection, consistency and the
//! enumerated group.

mod collect;
mod consistency;
mod group;
mod presentation;

pub use consistency::{check_consistency, ConsistencyReport, Overlap};
pub use group::{PcGroup, DEFAULT_MAX_ORDER};
pub use presentation::{format_word, parse_presentation, PcPresentation, Word};
