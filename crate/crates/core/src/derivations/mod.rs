//! Derivations `G/Φ(G) → A` for `A = Ω₁(Z(Φ(G)))` under conjugation.
//!
//! A derivation satisfies `δ(ūv̄) = δ(ū)^v·δ(v̄)`. Since `Ḡ` is elementary
//! abelian, one is determined by the images `b_i` of the basis cosets, and
//! the possible tuples form an `F_p`-subspace of `A^n`.

mod action;
mod oracle;
mod space;

pub use action::{ModuleAction, TraceMap};
pub use oracle::{brute_force_derivations, oracle_compare, subspace_members, OracleComparison, ORACLE_MAX_TUPLES};
pub use space::{
    apply_derivation, bar_word, constraint_matrix, derivation_space, evaluate, extension_check, inner_derivation,
    inner_space, support_space, Derivation, DerivationSpace,
};
