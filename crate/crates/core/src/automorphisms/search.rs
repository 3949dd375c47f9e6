use rayon::prelude::*;

use super::{is_inner, Automorphism};
use crate::error::AutomorphismError;
use crate::group::{Elem, FiniteGroup};
use crate::pc::PcGroup;
use crate::structure::{
    center, centralizer, derived_subgroup, frattini, frattini_transversal, is_cyclic, min_generators,
    upper_central_series, Subgroup,
};

/// The explicit order-3 automorphism for 2-generated 3-groups of class 3
/// with cyclic center: `(u·xⁱ)^β = u·(xk)ⁱ` for `u ∈ C_G(k)`, where
/// `k³ = 1`, `k ∈ Z₂(G) \ Z(G)`, `k ∉ G′`, and `x ∉ C_G(k)`.
///
/// Returns `Ok(None)` when no such `k` exists or no candidate verifies.
pub fn case_b_construct(g: &PcGroup) -> Result<Option<Automorphism>, AutomorphismError> {
    let series = upper_central_series(g);
    let class = series.len() - 1;
    let d = min_generators(g);
    let z = &series[1];
    if g.prime() != 3 || d != 2 || class != 3 || !is_cyclic(g, z) {
        return Err(AutomorphismError::CaseBPrecondition(format!(
            "p = {}, d(G) = {d}, class {class}, center cyclic: {}",
            g.prime(),
            is_cyclic(g, z)
        )));
    }
    let z2 = &series[2];
    let derived = derived_subgroup(g);
    let phi = frattini(g);
    for k in z2.members().iter().copied() {
        if z.contains(k) || derived.contains(k) || g.pow(k, 3) != g.identity() {
            continue;
        }
        let ck = centralizer(g, &[k]);
        if ck.order() * 3 != g.order() {
            continue;
        }
        let Some(x) = g.elements().find(|&x| !ck.contains(x)) else { continue };
        let xk = g.mul(x, k);
        assert_eq!(g.pow(xk, 3), g.pow(x, 3), "(xk)^3 differs from x^3");
        let x_inv = g.inv(x);
        let mut map = vec![0 as Elem; g.order()];
        for y in g.elements() {
            // y = u·xⁱ with u ∈ C_G(k)
            let mut u = y;
            let mut i = 0;
            while !ck.contains(u) {
                u = g.mul(u, x_inv);
                i += 1;
            }
            map[y as usize] = g.mul(u, g.pow(xk, i));
        }
        let Ok(beta) = Automorphism::from_map(g, map) else { continue };
        if beta.order() == 3 && beta.fixes_pointwise(&phi) && is_inner(g, z, &beta).is_none() {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}

/// Which candidate images a brute-force search ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchFamily {
    /// `x_i ↦ x_i·c_i` with `c_i ∈ C_G(Φ(G))`; contains every automorphism
    /// fixing `Φ(G)` pointwise.
    FrattiniFixed,
    /// `x_i ↦ x_i·c_i` with `c_i ∈ Φ(G)`: automorphisms acting trivially on `G/Φ(G)`.
    FrattiniCosets,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Largest group order for the [`SearchFamily::FrattiniCosets`] family.
    pub max_order: usize,
    /// Largest `d(G)` for the [`SearchFamily::FrattiniCosets`] family.
    pub max_generators: usize,
    /// Largest number of candidate tuples examined in either family.
    pub max_candidates: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_order: 1 << 10, max_generators: 4, max_candidates: 1 << 22 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub family: SearchFamily,
    pub candidates: u64,
    pub found: Option<Automorphism>,
}

/// Exhaustive search of one family for a non-inner automorphism of order
/// `p`, in a fixed order (candidate tuples in increasing base-`|C|` code,
/// first generator most significant).
pub fn brute_force_search(
    g: &PcGroup,
    family: SearchFamily,
    limits: &SearchLimits,
) -> Result<SearchOutcome, AutomorphismError> {
    if g.is_abelian() {
        return Err(AutomorphismError::Abelian);
    }
    let phi = frattini(g);
    let xs = frattini_transversal(g, &phi);
    let d = xs.len();
    let pool: Subgroup = match family {
        SearchFamily::FrattiniFixed => centralizer(g, phi.generators()),
        SearchFamily::FrattiniCosets => {
            if g.order() > limits.max_order || d > limits.max_generators {
                return Err(AutomorphismError::CapExceeded(format!(
                    "order {} with d(G) = {d}; the coset family is limited to order {} and d(G) ≤ {}",
                    g.order(),
                    limits.max_order,
                    limits.max_generators
                )));
            }
            phi.clone()
        }
    };
    let c = pool.members();
    let total = (c.len() as u64).checked_pow(d as u32).filter(|&t| t <= limits.max_candidates);
    let total = total.ok_or_else(|| {
        AutomorphismError::CapExceeded(format!("{}^{d} candidates exceed the budget of {}", c.len(), limits.max_candidates))
    })?;

    let z = center(g);
    let p = g.prime() as u64;
    let orders: Vec<u64> = xs.iter().map(|&x| g.element_order(x)).collect();
    let found = (0..total).into_par_iter().find_map_first(|code| {
        let mut rest = code;
        let mut targets = vec![0 as Elem; d];
        for i in (0..d).rev() {
            let ci = c[(rest % c.len() as u64) as usize];
            rest /= c.len() as u64;
            targets[i] = g.mul(xs[i], ci);
        }
        if targets.iter().zip(&orders).any(|(&y, &o)| g.element_order(y) != o) {
            return None;
        }
        let map = extend_from_generators(g, &xs, &targets)?;
        let alpha = Automorphism::from_map(g, map).ok()?;
        if alpha.order() != p {
            return None;
        }
        if family == SearchFamily::FrattiniFixed && !alpha.fixes_pointwise(&phi) {
            return None;
        }
        is_inner(g, &z, &alpha).is_none().then_some(alpha)
    });
    Ok(SearchOutcome { family, candidates: total, found })
}

/// The map `x_i ↦ y_i` extended along a breadth-first spanning tree of the
/// Cayley graph; `None` as soon as two paths disagree or two elements
/// collide.
fn extend_from_generators(g: &PcGroup, xs: &[Elem], ys: &[Elem]) -> Option<Vec<Elem>> {
    const UNSET: Elem = Elem::MAX;
    let mut map = vec![UNSET; g.order()];
    let mut hit = vec![false; g.order()];
    map[0] = 0;
    hit[0] = true;
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for (&x, &t) in xs.iter().zip(ys) {
            let next = g.mul(y, x);
            let image = g.mul(map[y as usize], t);
            match map[next as usize] {
                UNSET => {
                    if hit[image as usize] {
                        return None;
                    }
                    hit[image as usize] = true;
                    map[next as usize] = image;
                    queue.push(next);
                }
                existing if existing != image => return None,
                _ => {}
            }
        }
    }
    (queue.len() == g.order()).then_some(map)
}
