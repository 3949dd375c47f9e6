//! Automorphisms given by generator images, with exhaustive verification.

mod search;

pub use search::{brute_force_search, case_b_construct, SearchFamily, SearchLimits, SearchOutcome};

use rayon::prelude::*;

use crate::derivations::{evaluate, inner_space, Derivation, ModuleAction};
use crate::error::AutomorphismError;
use crate::group::{Elem, FiniteGroup};
use crate::pc::PcGroup;
use crate::structure::{QuotientGroup, Subgroup};

/// A verified automorphism. `images[k]` is the image of the pc generator
/// `g_{k+1}`; `map` is the full permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<Elem>,
    map: Vec<Elem>,
    order: u64,
}

impl Automorphism {
    /// Extend pc generator images to a map and check it is a bijective
    /// homomorphism. Agreement `α(x·g_k) = α(x)·α(g_k)` for every `x` and
    /// every pc generator already forces `α(xy) = α(x)α(y)` for all pairs.
    pub fn from_pc_images(g: &PcGroup, images: &[Elem]) -> Result<Self, AutomorphismError> {
        let n = g.ngens();
        if images.len() != n {
            return Err(AutomorphismError::WrongArity(images.len()));
        }
        if let Some(&bad) = images.iter().find(|&&y| y as usize >= g.order()) {
            return Err(AutomorphismError::BadImage(bad));
        }
        // x = x'·g_k where g_k is the last letter of x's normal word
        let mut map = vec![0 as Elem; g.order()];
        for x in 1..g.order() as Elem {
            let mut w = g.exponents(x);
            let k = w.iter().rposition(|&e| e > 0).expect("non-identity");
            w[k] -= 1;
            map[x as usize] = g.mul(map[g.element(&w) as usize], images[k]);
        }
        Self::from_map(g, map)
    }

    /// Wrap a full element map after checking it.
    pub fn from_map(g: &PcGroup, map: Vec<Elem>) -> Result<Self, AutomorphismError> {
        check_bijective(&map)?;
        let gens = g.generators();
        for x in g.elements() {
            for &s in &gens {
                if map[g.mul(x, s) as usize] != g.mul(map[x as usize], map[s as usize]) {
                    return Err(AutomorphismError::NotHomomorphism(x, s));
                }
            }
        }
        let images = gens.iter().map(|&s| map[s as usize]).collect();
        let order = permutation_order(&map);
        Ok(Self { images, map, order })
    }

    pub fn identity(g: &PcGroup) -> Self {
        Self { images: g.generators(), map: g.elements().collect(), order: 1 }
    }

    /// Conjugation `x ↦ h⁻¹xh`.
    pub fn conjugation(g: &PcGroup, h: Elem) -> Self {
        let map: Vec<Elem> = g.elements().map(|x| g.conj(x, h)).collect();
        Self { images: g.generators().iter().map(|&s| map[s as usize]).collect(), order: permutation_order(&map), map }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// Exact multiplicative order.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, g: &PcGroup, other: &Automorphism) -> Automorphism {
        let map: Vec<Elem> = self.map.iter().map(|&y| other.map[y as usize]).collect();
        Self { images: g.generators().iter().map(|&s| map[s as usize]).collect(), order: permutation_order(&map), map }
    }

    pub fn fixes_pointwise(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| self.apply(x) == x)
    }

    /// Homomorphism check over every pair of elements, in parallel.
    pub fn verify_all_pairs(&self, g: &PcGroup) -> Result<(), AutomorphismError> {
        check_bijective(&self.map)?;
        let bad = g.elements().into_par_iter().find_first(|&x| {
            g.elements().any(|y| self.map[g.mul(x, y) as usize] != g.mul(self.map[x as usize], self.map[y as usize]))
        });
        match bad {
            Some(x) => {
                let y = g
                    .elements()
                    .find(|&y| self.map[g.mul(x, y) as usize] != g.mul(self.map[x as usize], self.map[y as usize]))
                    .expect("failing pair");
                Err(AutomorphismError::NotHomomorphism(x, y))
            }
            None => Ok(()),
        }
    }
}

fn check_bijective(map: &[Elem]) -> Result<(), AutomorphismError> {
    let mut seen = vec![false; map.len()];
    for &y in map {
        let slot = seen.get_mut(y as usize).ok_or(AutomorphismError::BadImage(y))?;
        if *slot {
            return Err(AutomorphismError::NotBijective);
        }
        *slot = true;
    }
    Ok(())
}

fn permutation_order(map: &[Elem]) -> u64 {
    let mut seen = vec![false; map.len()];
    let mut order = 1u64;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// `x ↦ x·δ(x̄)`.
pub fn lift_derivation(g: &PcGroup, action: &ModuleAction, delta: &Derivation) -> Result<Automorphism, AutomorphismError> {
    if !crate::derivations::extension_check(g, action, delta.images()) {
        return Err(AutomorphismError::Derivation(crate::error::DerivationError::NotADerivation));
    }
    let images: Vec<Elem> = g.generators().iter().map(|&s| g.mul(s, evaluate(g, action, delta, s))).collect();
    let alpha = Automorphism::from_pc_images(g, &images)?;
    assert!(alpha.fixes_pointwise(action.frattini()), "lift moves an element of the Frattini subgroup");
    assert_eq!(alpha.is_identity(), delta.is_zero(), "lift order does not match the derivation");
    assert!(alpha.order() <= g.prime() as u64);
    Ok(alpha)
}

/// Some `h` with `α = (x ↦ h⁻¹xh)`, scanning one representative per coset of `Z(G)`.
pub fn is_inner(g: &PcGroup, center: &Subgroup, alpha: &Automorphism) -> Option<Elem> {
    let q = QuotientGroup::new(g, center).expect("the center is normal");
    let gens = g.generators();
    q.representatives()
        .iter()
        .copied()
        .find(|&h| gens.iter().zip(alpha.images()).all(|(&s, &y)| g.conj(s, h) == y))
}

/// Whether `δ ∈ Ider(Ḡ, A*)`, by subspace membership.
pub fn is_inner_via_derivation(g: &PcGroup, action: &ModuleAction, delta: &Derivation) -> Result<bool, AutomorphismError> {
    let inner = inner_space(g, action, action.a_star())?;
    Ok(inner.contains(&delta.to_vector(action)?))
}

/// A basis derivation of `Der(Ḡ, A_{i−1})` outside `Ider(Ḡ, A*)`, when
/// `d(Der(Ḡ, A_{i−1})) > d(Ider(Ḡ, A* ∩ Z_i))`.
pub fn find_noninner_derivation(
    g: &PcGroup,
    action: &ModuleAction,
    level: usize,
) -> Result<Option<Derivation>, AutomorphismError> {
    let i = level as isize;
    let der = crate::derivations::derivation_space(g, action, action.level(i - 1), None)?;
    let ider_level = inner_space(g, action, &action.a_star_level(g, i))?;
    let ider = inner_space(g, action, action.a_star())?;
    // Ider(A*) ∩ Der(A_{i-1}) = Ider(A* ∩ Z_i)
    debug_assert_eq!(
        ider.intersect(der.space()).expect("same ambient"),
        ider_level,
        "inner derivations with support in A_(i-1) are not those from A* ∩ Z_i"
    );
    if der.dim() <= ider_level.dim() {
        return Ok(None);
    }
    let found = der.basis().iter().find(|d| !ider.contains(&d.to_vector(action).expect("values in A")));
    Ok(Some(found.expect("a dimension gap leaves a basis vector outside the inner subspace").clone()))
}
