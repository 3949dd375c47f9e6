use std::collections::BTreeSet;

use super::action::ModuleAction;
use super::space::{derivation_space, extension_check, Derivation};
use crate::group::Elem;
use crate::linalg::{FpSubspace, FpVector};
use crate::pc::PcGroup;

/// Largest number of tuples [`brute_force_derivations`] will enumerate.
pub const ORACLE_MAX_TUPLES: u64 = 1 << 20;

/// Every vector of `s`, in increasing coefficient order.
pub fn subspace_members(s: &FpSubspace) -> Vec<FpVector> {
    let p = s.modulus();
    let mut out = vec![FpVector::zero(p, s.ambient())];
    for b in s.basis() {
        out = out.iter().flat_map(|v| (0..p).map(move |c| v.add(&b.scale(c)))).collect();
    }
    out
}

/// `Der^C(Ḡ, A)` by enumerating all of `C^n` and keeping the tuples that
/// pass [`extension_check`]. `None` above [`ORACLE_MAX_TUPLES`].
pub fn brute_force_derivations(g: &PcGroup, action: &ModuleAction, c: &FpSubspace) -> Option<BTreeSet<Vec<Elem>>> {
    let n = action.rank();
    let pool: Vec<Elem> = subspace_members(c).iter().map(|v| action.to_element(v)).collect();
    let total = (pool.len() as u64).checked_pow(n as u32).filter(|&t| t <= ORACLE_MAX_TUPLES)?;
    let mut found = BTreeSet::new();
    let mut images = vec![0 as Elem; n];
    for code in 0..total {
        let mut rest = code;
        for slot in images.iter_mut().rev() {
            *slot = pool[(rest % pool.len() as u64) as usize];
            rest /= pool.len() as u64;
        }
        if extension_check(g, action, &images) {
            found.insert(images.clone());
        }
    }
    Some(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    /// `d(Der^C)` from the solver.
    pub dim: usize,
    /// Number of tuples the enumeration accepted.
    pub brute_count: usize,
    pub equal: bool,
}

/// Compare the solver's `Der^C(Ḡ, A)` with [`brute_force_derivations`] as sets of image tuples.
pub fn oracle_compare(g: &PcGroup, action: &ModuleAction, c: &FpSubspace) -> Option<OracleComparison> {
    let brute = brute_force_derivations(g, action, c)?;
    let space = derivation_space(g, action, c, None).ok()?;
    let solved: BTreeSet<Vec<Elem>> = subspace_members(space.space())
        .iter()
        .map(|v| Derivation::from_vector(action, v).images().to_vec())
        .collect();
    Some(OracleComparison { dim: space.dim(), brute_count: brute.len(), equal: solved == brute })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_matches_enumeration_on_the_wreath_product() {
        let g = PcGroup::from_text("p=3; n=4; [g2,g1]=g3; [g3,g1]=g4", 1 << 12).unwrap();
        let action = ModuleAction::build(&g).unwrap();
        for c in [action.level(1).clone(), action.level(2).clone(), action.full()] {
            let r = oracle_compare(&g, &action, &c).unwrap();
            assert!(r.equal);
            assert_eq!(r.brute_count, 3usize.pow(r.dim as u32));
        }
    }

    #[test]
    fn subspace_members_counts() {
        let s = FpSubspace::span(3, 3, [FpVector::new(3, [1, 0, 2]), FpVector::new(3, [0, 1, 1])]);
        let members = subspace_members(&s);
        assert_eq!(members.len(), 9);
        assert!(members.iter().all(|v| s.contains(v)));
    }
}
