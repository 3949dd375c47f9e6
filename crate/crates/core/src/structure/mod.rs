//! Subgroups, quotients and the invariants built from them.

mod quotient;
mod rank;
mod subgroup;

pub use quotient::QuotientGroup;
pub use rank::{all_subgroups, rank, RANK_CAP_EXPONENT};
pub use subgroup::{Subgroup, SubgroupView};

use crate::error::StructureError;
use crate::group::{log_p, Elem, FiniteGroup};

pub fn center<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    centralizer(g, &g.generators())
}

/// `C_G(S)`. Checking against a generating set of `⟨S⟩` gives the same answer.
pub fn centralizer<G: FiniteGroup + ?Sized>(g: &G, s: &[Elem]) -> Subgroup {
    let members: Vec<Elem> = g
        .elements()
        .filter(|&x| s.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::from_closed_set(g, members)
}

pub fn normal_closure<G: FiniteGroup + ?Sized>(g: &G, seeds: impl IntoIterator<Item = Elem>) -> Subgroup {
    let gens = g.generators();
    let mut h = Subgroup::trivial(g);
    let mut pending: Vec<Elem> = seeds.into_iter().collect();
    while let Some(x) = pending.pop() {
        if h.extend(g, x) {
            for &s in &gens {
                pending.push(g.conj(x, s));
            }
        }
    }
    h
}

/// `[H, K]` for normal subgroups `H`, `K`.
pub fn commutator_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let seeds: Vec<Elem> = h
        .generators()
        .iter()
        .flat_map(|&a| k.generators().iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.comm(a, b))
        .collect();
    normal_closure(g, seeds)
}

pub fn derived_subgroup<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator_subgroup(g, &whole, &whole)
}

pub fn gamma3<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    commutator_subgroup(g, &derived_subgroup(g), &Subgroup::whole(g))
}

/// `Φ(G) = G′Gᵖ`.
pub fn frattini<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    let p = g.prime() as u64;
    let mut phi = derived_subgroup(g);
    for x in g.elements() {
        phi.extend(g, g.pow(x, p));
    }
    phi
}

/// `[Z_0 = 1, Z_1, …, Z_c = G]`, each step the preimage of the center of `G/Z_i`.
pub fn upper_central_series<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let last = series.last().expect("series is never empty");
        if last.order() == g.order() {
            return series;
        }
        let q = QuotientGroup::new(g, last).expect("upper central terms are normal");
        let next = q.preimage(&center(&q));
        assert!(next.order() > last.order(), "upper central series stalled in a p-group");
        series.push(next);
    }
}

pub fn nilpotency_class<G: FiniteGroup + ?Sized>(g: &G) -> usize {
    upper_central_series(g).len() - 1
}

/// `Ω₁(H)`.
pub fn omega1<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Subgroup {
    let p = g.prime() as u64;
    Subgroup::generate(g, h.members().iter().copied().filter(|&x| g.pow(x, p) == g.identity()))
}

/// `Ω₁*(G) = ⟨x : xᵖ ∈ Z(G)⟩`.
pub fn omega1_star<G: FiniteGroup + ?Sized>(g: &G) -> Subgroup {
    let p = g.prime() as u64;
    let z = center(g);
    Subgroup::generate(g, g.elements().filter(|&x| z.contains(g.pow(x, p))))
}

/// `d(G) = log_p |G/Φ(G)|`.
pub fn min_generators<G: FiniteGroup + ?Sized>(g: &G) -> usize {
    log_p(g.prime(), g.order() / frattini(g).order())
}

/// `d(H)` for a subgroup, computed inside `H`.
pub fn subgroup_min_generators<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> usize {
    min_generators(&SubgroupView::new(g, h))
}

pub fn quotient<'a, G: FiniteGroup + ?Sized>(g: &'a G, n: &Subgroup) -> Result<QuotientGroup<'a, G>, StructureError> {
    QuotientGroup::new(g, n)
}

/// Greedy Burnside basis: the generators of `G` (pc generators for a
/// [`crate::pc::PcGroup`]) in order, keeping each one not already in
/// `⟨Φ, earlier picks⟩`. Their cosets form a basis of `G/Φ(G)`.
pub fn frattini_transversal<G: FiniteGroup + ?Sized>(g: &G, phi: &Subgroup) -> Vec<Elem> {
    let mut span = phi.clone();
    g.generators().into_iter().filter(|&x| span.extend(g, x)).collect()
}

/// Invariants of an abelian subgroup as cyclic factor orders, largest first.
pub fn abelian_invariants<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> Vec<u64> {
    let p = g.prime() as u64;
    // at_least[j] = number of cyclic factors of order ≥ p^(j+1)
    let mut at_least = Vec::new();
    let mut prev = 1usize;
    let mut q = p;
    loop {
        let omega = h.members().iter().filter(|&&x| g.pow(x, q) == g.identity()).count();
        if omega == prev {
            break;
        }
        at_least.push(log_p(g.prime(), omega / prev));
        prev = omega;
        q *= p;
    }
    let mut out = Vec::new();
    for (j, &n) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..n - next {
            out.push(p.pow(j as u32 + 1));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn is_cyclic<G: FiniteGroup + ?Sized>(g: &G, h: &Subgroup) -> bool {
    h.members().iter().any(|&x| g.element_order(x) as usize == h.order())
}

/// `rk(G/Z)` bound `d(G/G′Z) + d(G′Z/Z)`, valid for class at most 3.
pub fn rank_surrogate_mod_center<G: FiniteGroup + ?Sized>(g: &G) -> usize {
    let z = center(g);
    let gz = derived_subgroup(g).join(g, &z);
    let top = QuotientGroup::new(g, &gz).expect("G'Z is normal");
    let h = QuotientGroup::new(g, &z).expect("Z is normal");
    let gz_bar = h.image(&gz);
    min_generators(&top) + subgroup_min_generators(&h, &gz_bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcGroup;

    const D16: &str = "p=2; n=4; g2^2=g3; g3^2=g4; [g2,g1]=g3*g4; [g3,g1]=g4";
    const W81: &str = "p=3; n=4; [g2,g1]=g3; [g3,g1]=g4";

    fn group(text: &str) -> PcGroup {
        PcGroup::from_text(text, 1 << 16).unwrap()
    }

    // independent oracle: Z_{i+1} = {x : [x, y] ∈ Z_i for every y}
    fn upper_series_oracle(g: &PcGroup) -> Vec<Vec<Elem>> {
        let mut series = vec![vec![0]];
        loop {
            let last = series.last().unwrap().clone();
            if last.len() == g.order() {
                return series;
            }
            let next: Vec<Elem> = g.elements().filter(|&x| g.elements().all(|y| last.contains(&g.comm(x, y)))).collect();
            series.push(next);
        }
    }

    #[test]
    fn d16_series_and_subgroups() {
        let g = group(D16);
        let (s, r) = (g.pc_generator(0), g.pc_generator(1));
        let r2 = g.pow(r, 2);
        let r4 = g.pow(r, 4);
        let z = center(&g);
        assert_eq!(z.members(), &{
            let mut v = vec![0, r4];
            v.sort();
            v
        }[..]);
        assert_eq!(centralizer(&g, &[r]).order(), 8);
        assert!(centralizer(&g, &[r]).contains(r) && !centralizer(&g, &[r]).contains(s));
        let d = derived_subgroup(&g);
        assert_eq!(d.order(), 4);
        assert!(d.contains(r2));
        assert_eq!(frattini(&g), d);
        assert_eq!(gamma3(&g).members(), z.members());
        let ucs = upper_central_series(&g);
        assert_eq!(ucs.len(), 4);
        assert_eq!(ucs[1], z);
        assert_eq!(ucs[2].members(), d.members());
        let oracle = upper_series_oracle(&g);
        assert_eq!(oracle.len(), ucs.len());
        for (a, b) in ucs.iter().zip(&oracle) {
            assert_eq!(a.members(), &b[..]);
        }
        // x² ∈ Z: the reflections, r^{±2}, r⁴ and 1, and r^{±4}... all listed by brute force
        let star = omega1_star(&g);
        let expected: Vec<Elem> = g.elements().filter(|&x| z.contains(g.pow(x, 2))).collect();
        let closure = Subgroup::generate(&g, expected);
        assert_eq!(star, closure);
        assert_eq!(star.order(), 16);
        assert_eq!(min_generators(&g), 2);
    }

    #[test]
    fn wreath_class_three() {
        let g = group(W81);
        assert_eq!(nilpotency_class(&g), 3);
        assert_eq!(upper_series_oracle(&g).len(), 4);
    }

    #[test]
    fn quotients() {
        let g = group(D16);
        let z = center(&g);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(nilpotency_class(&q), 2);
        assert_eq!(min_generators(&q), 2);
        assert_eq!(rank(&q).unwrap(), 2);
        assert_eq!(quotient(&g, &Subgroup::whole(&g)).unwrap().order(), 1);
        let copy = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(copy.order(), 16);
        assert_eq!(nilpotency_class(&copy), 3);
        let s = Subgroup::generate(&g, [g.pc_generator(0)]);
        assert!(matches!(quotient(&g, &s), Err(StructureError::NotNormal { .. })));
    }

    #[test]
    fn omega_and_invariants() {
        let c9 = group("p=3; n=2; g1^3=g2");
        let whole = Subgroup::whole(&c9);
        assert_eq!(omega1(&c9, &whole).order(), 3);
        assert!(is_cyclic(&c9, &whole));
        assert_eq!(abelian_invariants(&c9, &whole), vec![9]);
        let e = group("p=2; n=3");
        let whole = Subgroup::whole(&e);
        assert_eq!(omega1(&e, &whole).order(), 8);
        assert_eq!(abelian_invariants(&e, &whole), vec![2, 2, 2]);
        assert_eq!(min_generators(&e), 3);
        assert_eq!(rank(&e).unwrap(), 3);
        let mixed = group("p=2; n=4; g1^2=g2; g2^2=g3");
        assert_eq!(abelian_invariants(&mixed, &Subgroup::whole(&mixed)), vec![8, 2]);
        assert_eq!(rank(&mixed).unwrap(), 2);
    }

    #[test]
    fn transversal_is_burnside_basis() {
        let g = group(D16);
        let phi = frattini(&g);
        let t = frattini_transversal(&g, &phi);
        assert_eq!(t, vec![g.pc_generator(0), g.pc_generator(1)]);
    }
}
