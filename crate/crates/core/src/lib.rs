//! Non-inner automorphisms of order `p` for finite `p`-groups.
//!
//! A group is read from a power-commutator presentation ([`pc`]), its
//! subgroup invariants are computed by exhaustive enumeration
//! ([`structure`]), derivations `G/Φ(G) → A` are solved over `F_p`
//! ([`derivations`]), and [`engine`] routes the group through a fixed list of
//! criteria until one produces an automorphism that can be checked
//! independently of how it was found.

pub mod automorphisms;
pub mod coords;
pub mod corpus;
pub mod derivations;
pub mod engine;
pub mod error;
pub mod group;
pub mod identities;
pub mod linalg;
pub mod pc;
pub mod structure;

pub use error::Error;
pub use group::{Elem, FiniteGroup};
pub use pc::{parse_presentation, PcGroup, PcPresentation};
