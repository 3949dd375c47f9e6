use std::collections::HashSet;

use super::subgroup::Subgroup;
use super::subgroup_min_generators;
use crate::error::StructureError;
use crate::group::{log_p, Elem, FiniteGroup};

/// Subgroup enumeration is limited to groups of order at most `p^5`.
pub const RANK_CAP_EXPONENT: usize = 5;

/// Every subgroup, layer by layer. A subgroup of order `p^{k+1}` has a normal
/// subgroup `M` of index `p`, so it is `⟨M, x⟩` for some `x ∉ M` with
/// `xᵖ ∈ M` normalizing `M`.
pub fn all_subgroups<G: FiniteGroup + ?Sized>(g: &G) -> Result<Vec<Subgroup>, StructureError> {
    let p = g.prime();
    if log_p(p, g.order()) > RANK_CAP_EXPONENT {
        return Err(StructureError::CapExceeded {
            what: "subgroup enumeration",
            order: g.order(),
            cap_exponent: RANK_CAP_EXPONENT,
        });
    }
    let mut layer = vec![Subgroup::trivial(g)];
    let mut out = layer.clone();
    while layer[0].order() < g.order() {
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut next = Vec::new();
        for m in &layer {
            for x in g.elements() {
                if m.contains(x) || !m.contains(g.pow(x, p as u64)) || !normalizes(g, x, m) {
                    continue;
                }
                let mut h = m.clone();
                h.extend(g, x);
                if seen.insert(h.members().to_vec()) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

fn normalizes<G: FiniteGroup + ?Sized>(g: &G, x: Elem, m: &Subgroup) -> bool {
    m.generators().iter().all(|&y| m.contains(g.conj(y, x)))
}

/// `rk(G)`: the largest `d(H)` over all subgroups.
pub fn rank<G: FiniteGroup + ?Sized>(g: &G) -> Result<usize, StructureError> {
    Ok(all_subgroups(g)?
        .iter()
        .map(|h| subgroup_min_generators(g, h))
        .max()
        .unwrap_or(0))
}
