use std::collections::HashSet;

use super::certificate::{
    CenterProfile, Criterion, FrattiniCenterProfile, HypothesisFlags, InnerLevel, Profile, RankBound,
};
use crate::derivations::{inner_space, ModuleAction};
use crate::group::{binomial, log_p, Elem, FiniteGroup};
use crate::linalg::FpMatrix;
use crate::pc::PcGroup;
use crate::structure::{
    abelian_invariants, is_cyclic, omega1, quotient, rank, rank_surrogate_mod_center, subgroup_min_generators,
    Subgroup, RANK_CAP_EXPONENT,
};

/// Everything the criteria look at, recomputed from the group alone.
#[derive(Clone, Debug)]
pub struct GroupFacts {
    pub profile: Profile,
    pub flags: HypothesisFlags,
    /// Exponents over `x̄_1..x̄_n` of the first `x ∉ Φ(G)` with `τ_x = 0`.
    pub vanishing_trace: Option<Vec<u32>>,
    /// `Z(G)` is a direct factor of `A* = Ω₁*(G) ∩ Z(Φ(G))`.
    pub center_direct_factor: bool,
    /// `Ω₁(Z(G))` is a direct factor of `Ω₁(A*)`.
    pub center_direct_factor_omega1: bool,
}

impl GroupFacts {
    pub fn compute(g: &PcGroup, action: &ModuleAction) -> Self {
        let flags = HypothesisFlags {
            centralizer_of_zphi_is_phi: action.hypothesis_holds(),
            omega1_zphi_in_z3: action.a().is_subgroup_of(action.z(3)),
        };
        let a_star = action.a_star();
        let z = action.center();
        Self {
            profile: compute_profile(g, action),
            flags,
            vanishing_trace: vanishing_trace(action),
            center_direct_factor: is_direct_factor(g, a_star, z),
            center_direct_factor_omega1: is_direct_factor(g, &omega1(g, a_star), &omega1(g, z)),
        }
    }
}

pub fn compute_profile(g: &PcGroup, action: &ModuleAction) -> Profile {
    let p = g.prime();
    let z = action.center();
    let zphi = action.zphi();
    let a_star = (0..=action.class())
        .map(|i| {
            let w = action.a_star_level(g, i as isize);
            InnerLevel {
                level: i,
                log_order: log_p(p, w.order()),
                ider_dim: inner_space(g, action, &w).expect("A* ∩ Z_i lies in A*").dim(),
            }
        })
        .collect();
    let quotient_exponent = log_p(p, g.order() / z.order());
    let rank_mod_center = if quotient_exponent <= RANK_CAP_EXPONENT {
        let q = quotient(g, z).expect("the center is normal");
        RankBound { value: Some(rank(&q).expect("within cap")), method: "exact".into() }
    } else if action.class() <= 3 {
        RankBound { value: Some(rank_surrogate_mod_center(g)), method: "surrogate".into() }
    } else {
        RankBound { value: None, method: "unavailable".into() }
    };
    Profile {
        prime: p,
        order: g.order() as u64,
        class: action.class(),
        d: action.rank(),
        center: CenterProfile {
            d: subgroup_min_generators(g, z),
            cyclic: is_cyclic(g, z),
            invariants: abelian_invariants(g, z),
        },
        frattini_center: FrattiniCenterProfile {
            d: subgroup_min_generators(g, zphi),
            d_meet_z2: subgroup_min_generators(g, &zphi.intersect(g, action.z(2))),
        },
        dim_a: action.dim(),
        a_dims: (1..=3).map(|i| action.level_dim(i)).collect(),
        a_star,
        rank_mod_center,
    }
}

/// First `x̄ ≠ 1` (in increasing exponent code) whose trace on `A` vanishes.
fn vanishing_trace(action: &ModuleAction) -> Option<Vec<u32>> {
    let p = action.prime();
    let n = action.rank();
    let total = (p as usize).pow(n as u32);
    (1..total).find_map(|mut code| {
        let mut e = vec![0u32; n];
        for slot in e.iter_mut().rev() {
            *slot = (code % p as usize) as u32;
            code /= p as usize;
        }
        let m = e.iter().enumerate().fold(FpMatrix::identity(p, action.dim()), |acc, (i, &k)| {
            acc.mul(&action.action_matrix(i).pow(k as u64)).expect("square")
        });
        let trace = (1..p as u64).fold(FpMatrix::identity(p, action.dim()), |acc, k| acc.add(&m.pow(k)));
        trace.is_zero().then_some(e)
    })
}

/// Whether the abelian group `whole` splits as `part × K`, by searching for a
/// complement `K`: subgroups meeting `part` trivially are grown one cyclic
/// step at a time until one reaches order `|whole|/|part|`.
pub fn is_direct_factor<G: FiniteGroup + ?Sized>(g: &G, whole: &Subgroup, part: &Subgroup) -> bool {
    if !part.is_subgroup_of(whole) {
        return false;
    }
    let target = whole.order() / part.order();
    let p = g.prime() as u64;
    let mut layer = vec![Subgroup::trivial(g)];
    while let Some(first) = layer.first() {
        if first.order() == target {
            return true;
        }
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut next = Vec::new();
        for k in &layer {
            for &x in whole.members() {
                if k.contains(x) || !k.contains(g.pow(x, p)) {
                    continue;
                }
                let mut bigger = k.clone();
                bigger.extend(g, x);
                if bigger.members().iter().any(|&y| y != 0 && part.contains(y)) {
                    continue;
                }
                if seen.insert(bigger.members().to_vec()) {
                    next.push(bigger);
                }
            }
        }
        layer = next;
    }
    false
}

/// Preconditions of a criterion, from the facts alone. The detail string
/// names the quantities compared.
pub fn applies(criterion: Criterion, facts: &GroupFacts) -> (bool, String) {
    let pr = &facts.profile;
    let flags = &facts.flags;
    let p = pr.prime;
    let n = pr.d;
    let dz = pr.center.d;
    let section3 = flags.centralizer_of_zphi_is_phi && flags.omega1_zphi_in_z3;
    let hyp = format!(
        "C_G(Z(Phi)) = Phi: {}, Omega1(Z(Phi)) <= Z3: {}",
        flags.centralizer_of_zphi_is_phi, flags.omega1_zphi_in_z3
    );
    let class3 = pr.class == 3;
    match criterion {
        Criterion::LargePrime => (section3 && p > 3, format!("{hyp}; p = {p}")),
        Criterion::ManyGenerators => (section3 && p == 3 && n > 3, format!("{hyp}; p = {p}, d(G) = {n}")),
        Criterion::DimensionMismatch => {
            let fc = &pr.frattini_center;
            let holds = p == 3 && n == 3 && (fc.d_meet_z2 != 3 * dz || fc.d != 6 * dz);
            (
                section3 && holds,
                format!(
                    "{hyp}; p = {p}, d(G) = {n}, d(Z(Phi) meet Z2) = {}, d(Z(Phi)) = {}, d(Z) = {dz}",
                    fc.d_meet_z2, fc.d
                ),
            )
        }
        Criterion::VanishingTrace => {
            let holds = p == 3 && n == 3 && facts.vanishing_trace.is_some();
            (section3 && holds, format!("{hyp}; p = {p}, d(G) = {n}, vanishing trace at {:?}", facts.vanishing_trace))
        }
        Criterion::CenterDirectFactor => {
            let holds = n == 3 && facts.center_direct_factor;
            (
                section3 && holds,
                format!(
                    "{hyp}; d(G) = {n}, Z direct factor of A*: {}, Omega1 reading: {}",
                    facts.center_direct_factor, facts.center_direct_factor_omega1
                ),
            )
        }
        Criterion::RankBoundOdd | Criterion::RankBoundEven => {
            let odd = criterion == Criterion::RankBoundOdd;
            let threshold = if odd { binomial(n + 1, 2) * dz } else { binomial(n, 2) * dz };
            let rank_ok = pr.rank_mod_center.value.is_some_and(|r| r < threshold);
            let prime_ok = if odd { p % 2 == 1 } else { p == 2 };
            (
                flags.centralizer_of_zphi_is_phi && prime_ok && rank_ok,
                format!(
                    "C_G(Z(Phi)) = Phi: {}; p = {p}, rk(G/Z) {} {:?} < {threshold}",
                    flags.centralizer_of_zphi_is_phi, pr.rank_mod_center.method, pr.rank_mod_center.value
                ),
            )
        }
        Criterion::NonCyclicCenter => (
            p % 2 == 1 && class3 && !pr.center.cyclic,
            format!("p = {p}, class {}, center cyclic: {}", pr.class, pr.center.cyclic),
        ),
        Criterion::TwoGeneratorConstruction => (
            p == 3 && n == 2 && class3 && pr.center.cyclic,
            format!("p = {p}, d(G) = {n}, class {}, center cyclic: {}", pr.class, pr.center.cyclic),
        ),
        Criterion::EvenNonCyclicCenter => (
            p == 2 && class3 && n != 3 && !pr.center.cyclic,
            format!("p = {p}, class {}, d(G) = {n}, center cyclic: {}", pr.class, pr.center.cyclic),
        ),
        Criterion::EvenThreeGenerators => {
            (p == 2 && class3 && n == 3 && dz > 2, format!("p = {p}, class {}, d(G) = {n}, d(Z) = {dz}", pr.class))
        }
        Criterion::EvenManyGenerators => (p == 2 && class3 && n > 4, format!("p = {p}, class {}, d(G) = {n}", pr.class)),
        Criterion::CentralizerFallback => (!flags.centralizer_of_zphi_is_phi, hyp),
        Criterion::BruteForce | Criterion::NoneFound => (true, String::new()),
    }
}

/// The first subcase of the `A ≤ Z_3` criteria that holds.
pub fn check_thm34(facts: &GroupFacts) -> Option<Criterion> {
    [
        Criterion::LargePrime,
        Criterion::ManyGenerators,
        Criterion::DimensionMismatch,
        Criterion::VanishingTrace,
        Criterion::CenterDirectFactor,
    ]
    .into_iter()
    .find(|&c| applies(c, facts).0)
}

/// The rank criterion for the group's prime, when the inequality is established.
pub fn check_thm35(facts: &GroupFacts) -> Option<Criterion> {
    [Criterion::RankBoundOdd, Criterion::RankBoundEven].into_iter().find(|&c| applies(c, facts).0)
}

/// The first class-3 criterion for `p = 2` that holds.
pub fn check_p2(facts: &GroupFacts) -> Option<Criterion> {
    [Criterion::EvenNonCyclicCenter, Criterion::EvenThreeGenerators, Criterion::EvenManyGenerators]
        .into_iter()
        .find(|&c| applies(c, facts).0)
}

/// The three counting inequalities that must hold in any group with no
/// suitable non-inner automorphism, with `d_i = d(A_i)` and `d_i = 0` for
/// `i ≤ 0`. Returns `(label, lhs, rhs)` triples.
pub fn counting_inequalities(action: &ModuleAction) -> Vec<(&'static str, usize, usize)> {
    let n = action.rank();
    let p = action.prime() as isize;
    let d = |i: isize| action.level_dim(i);
    let c2 = binomial(n, 2);
    vec![
        ("(n-1)d3 <= n d(4-p) + C(n,2) d2", (n.saturating_sub(1)) * d(3), n * d(4 - p) + c2 * d(2)),
        (
            "C(n,2) d2 <= n d(4-p) + n(n-1) d(3-p) + C(n,2)(n-1) d1",
            c2 * d(2),
            n * d(4 - p) + n * n.saturating_sub(1) * d(3 - p) + c2 * n.saturating_sub(1) * d(1),
        ),
        ("C(n,2) d1 <= n d(4-p) + n(n-1) d(3-p)", c2 * d(1), n * d(4 - p) + n * n.saturating_sub(1) * d(3 - p)),
    ]
}
