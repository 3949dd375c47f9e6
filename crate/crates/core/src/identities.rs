//! Commutator identities of 3-groups of class at most 3, checked element by element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::group::{binomial, Elem, FiniteGroup};
use crate::pc::PcGroup;
use crate::structure::{centralizer, frattini, nilpotency_class, omega1_star};

/// Exponents `i` used in the power identities.
pub const EXPONENTS: std::ops::RangeInclusive<u64> = 0..=9;

#[derive(Clone, Copy, Debug)]
pub struct IdentityConfig {
    /// Groups up to this order are checked on every pair and triple.
    pub exhaustive_max_order: usize,
    /// Number of random triples above that order.
    pub samples: usize,
    pub seed: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        Self { exhaustive_max_order: 81, samples: 10_000, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
    /// Elements of the first violating case, in the group's normal form.
    pub first_violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub exhaustive: bool,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn violations(&self) -> u64 {
        self.results.iter().map(|r| r.violations).sum()
    }
}

pub const NAMES: [&str; 6] = [
    "[x,y^i] = [x,y]^i [x,y,y]^C(i,2)",
    "[x^i,y] = [x,y]^i [x,y,x]^C(i,2)",
    "[x^3,y] = 1 iff [x,y]^3 = 1",
    "(xy)^3 = x^3 y^3 [y,x]^3 [y,x,x] [y,x,y]^2",
    "[x,y,z][y,z,x][z,x,y] = 1",
    "Z(Phi(G)) <= Omega1*(G)",
];

/// Which of the two-variable identities fail on `(x, y)`, as a bit mask over the first four [`NAMES`].
fn pair_failures<G: FiniteGroup + ?Sized>(g: &G, x: Elem, y: Elem) -> u8 {
    let mut bad = 0u8;
    let xy = g.comm(x, y);
    let xyy = g.comm(xy, y);
    let xyx = g.comm(xy, x);
    for i in EXPONENTS {
        let c = binomial(i as usize, 2) as u64;
        if g.comm(x, g.pow(y, i)) != g.mul(g.pow(xy, i), g.pow(xyy, c)) {
            bad |= 1;
        }
        if g.comm(g.pow(x, i), y) != g.mul(g.pow(xy, i), g.pow(xyx, c)) {
            bad |= 2;
        }
    }
    if (g.comm(g.pow(x, 3), y) == 0) != (g.pow(xy, 3) == 0) {
        bad |= 4;
    }
    let yx = g.comm(y, x);
    let rhs = [g.pow(x, 3), g.pow(y, 3), g.pow(yx, 3), g.comm(yx, x), g.pow(g.comm(yx, y), 2)]
        .into_iter()
        .fold(0, |acc, e| g.mul(acc, e));
    if g.pow(g.mul(x, y), 3) != rhs {
        bad |= 8;
    }
    bad
}

fn hall_witt_fails<G: FiniteGroup + ?Sized>(g: &G, x: Elem, y: Elem, z: Elem) -> bool {
    let cyc = [g.comm_seq(&[x, y, z]), g.comm_seq(&[y, z, x]), g.comm_seq(&[z, x, y])];
    cyc.into_iter().fold(0, |acc, c| g.mul(acc, c)) != 0
}

/// Run the suite. Requires `p = 3` and class at most 3.
pub fn check_identities(g: &PcGroup, config: &IdentityConfig) -> Result<IdentityReport, String> {
    if g.prime() != 3 {
        return Err(format!("the identities are for 3-groups, got p = {}", g.prime()));
    }
    let class = nilpotency_class(g);
    if class > 3 {
        return Err(format!("the identities are for class at most 3, got class {class}"));
    }
    let n = g.order() as u64;
    let exhaustive = g.order() <= config.exhaustive_max_order;
    let triples: Vec<(Elem, Elem, Elem)> = if exhaustive {
        Vec::new()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut pick = || rng.gen_range(0..g.order()) as Elem;
        (0..config.samples).map(|_| (pick(), pick(), pick())).collect()
    };

    // per identity: (cases, violations, first violating triple)
    type Tally = [(u64, u64, Option<(Elem, Elem, Elem)>); 5];
    let tally_of = |t: (Elem, Elem, Elem), pairs_only: bool| -> Tally {
        let bad = if pairs_only { pair_failures(g, t.0, t.1) } else { (hall_witt_fails(g, t.0, t.1, t.2) as u8) << 4 };
        std::array::from_fn(|k| {
            if pairs_only && k == 4 || !pairs_only && k < 4 {
                (0, 0, None)
            } else {
                let failed = bad >> k & 1 == 1;
                (1, failed as u64, failed.then_some(t))
            }
        })
    };
    let merge = |mut a: Tally, b: Tally| -> Tally {
        for (x, y) in a.iter_mut().zip(b) {
            x.0 += y.0;
            x.1 += y.1;
            x.2 = x.2.or(y.2);
        }
        a
    };
    let empty = || -> Tally { Default::default() };

    let tally = if exhaustive {
        let pairs = (0..n * n).into_par_iter().map(|c| tally_of(((c / n) as Elem, (c % n) as Elem, 0), true)).reduce(empty, merge);
        let triples = (0..n * n * n)
            .into_par_iter()
            .map(|c| tally_of(((c / (n * n)) as Elem, (c / n % n) as Elem, (c % n) as Elem), false))
            .reduce(empty, merge);
        merge(pairs, triples)
    } else {
        // ordered reduction keeps the first violation deterministic
        let pairs = triples.par_iter().map(|&t| tally_of(t, true)).reduce(empty, merge);
        merge(pairs, triples.par_iter().map(|&t| tally_of(t, false)).reduce(empty, merge))
    };

    let show = |t: (Elem, Elem, Elem), k: usize| {
        if k == 4 {
            format!("x = {}, y = {}, z = {}", g.format(t.0), g.format(t.1), g.format(t.2))
        } else {
            format!("x = {}, y = {}", g.format(t.0), g.format(t.1))
        }
    };
    let mut results: Vec<IdentityResult> = tally
        .iter()
        .enumerate()
        .map(|(k, &(cases, violations, first))| IdentityResult {
            name: NAMES[k],
            cases,
            violations,
            first_violation: first.map(|t| show(t, k)),
        })
        .collect();

    let phi = frattini(g);
    let zphi = centralizer(g, phi.generators()).intersect(g, &phi);
    let star = omega1_star(g);
    let escapee = zphi.members().iter().copied().find(|&a| !star.contains(a));
    results.push(IdentityResult {
        name: NAMES[5],
        cases: 1,
        violations: escapee.is_some() as u64,
        first_violation: escapee.map(|a| format!("a = {}", g.format(a))),
    });
    Ok(IdentityReport { exhaustive, results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_group_is_exhaustive_and_clean() {
        let g = PcGroup::from_text("p=3; n=3; [g2,g1]=g3", 1 << 12).unwrap();
        let report = check_identities(&g, &IdentityConfig::default()).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.violations(), 0);
        assert_eq!(report.results[4].cases, 27 * 27 * 27);
        assert_eq!(report.results[0].cases, 27 * 27);
    }

    #[test]
    fn sampling_is_seeded() {
        let g = PcGroup::from_text("p=3; n=5; [g2,g1]=g3; [g3,g1]=g4; [g3,g2]=g5", 1 << 12).unwrap();
        let config = IdentityConfig { samples: 500, ..IdentityConfig::default() };
        let a = check_identities(&g, &config).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, check_identities(&g, &config).unwrap());
        assert_eq!(a.results[4].cases, 500);
    }

    #[test]
    fn preconditions() {
        let d8 = PcGroup::from_text("p=2; n=3; [g2,g1]=g3", 1 << 12).unwrap();
        assert!(check_identities(&d8, &IdentityConfig::default()).is_err());
        let class4 = PcGroup::from_text("p=3; n=5; g2^3=g4^2; g3^3=g5^2; [g2,g1]=g3; [g3,g1]=g4; [g4,g1]=g5", 1 << 12).unwrap();
        assert!(check_identities(&class4, &IdentityConfig::default()).is_err());
    }

    #[test]
    fn a_broken_identity_is_reported() {
                let g = PcGroup::from_text("p=3; n=5; g2^3=g4^2; g3^3=g5^2; [g2,g1]=g3; [g3,g1]=g4; [g4,g1]=g5", 1 << 12).unwrap();
        let bad = (0..g.order() as Elem).flat_map(|x| (0..g.order() as Elem).map(move |y| (x, y)));
        assert!(bad.into_iter().any(|(x, y)| pair_failures(&g, x, y) != 0));
    }
}
