//! Randomized invariants over the corpus groups.

mod common;

use std::sync::OnceLock;

use noninner::automorphisms::{lift_derivation, Automorphism};
use noninner::coords::Coordinates;
use noninner::derivations::{derivation_space, extension_check, Derivation, ModuleAction};
use noninner::linalg::{FpMatrix, FpVector};
use noninner::pc::parse_presentation;
use noninner::structure::Subgroup;
use noninner::{Elem, FiniteGroup, PcGroup};
use proptest::prelude::*;

struct Fixture {
    g: PcGroup,
    action: ModuleAction,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        common::corpus_groups()
            .into_iter()
            .filter(|(e, _)| e.order <= 729)
            .map(|(_, g)| {
                let action = ModuleAction::build(&g).unwrap();
                Fixture { g, action }
            })
            .collect()
    })
}

fn pick(k: usize) -> &'static Fixture {
    let all = fixtures();
    &all[k % all.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_axioms(k in 0usize..64, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let g = &pick(k).g;
        let n = g.order() as u32;
        let (x, y, z) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        prop_assert_eq!(g.inv(g.comm(x, y)), g.comm(y, x));
        prop_assert_eq!(g.conj(g.mul(x, y), z), g.mul(g.conj(x, z), g.conj(y, z)));
        prop_assert_eq!(g.element(&g.exponents(x)), x);
        let order = g.element_order(x);
        prop_assert!(order.is_power_of_two() || g.prime() != 2);
        prop_assert_eq!(g.pow(x, order), 0);
    }

    #[test]
    fn generated_subgroups_are_closed(k in 0usize..64, seeds in prop::collection::vec(any::<u32>(), 0..3)) {
        let g = &pick(k).g;
        let h = Subgroup::generate(g, seeds.iter().map(|s| s % g.order() as u32));
        prop_assert!(h.contains(0));
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in h.members().iter().take(40) {
            prop_assert!(h.contains(g.inv(x)));
            for &y in h.members().iter().take(40) {
                prop_assert!(h.contains(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn coordinates_are_additive(k in 0usize..64, a in any::<u32>(), b in any::<u32>()) {
        let f = pick(k);
        let members = f.action.a().members();
        let x = members[a as usize % members.len()];
        let y = members[b as usize % members.len()];
        let coords = Coordinates::new(&f.g, f.action.a().generators()).unwrap();
        let sum = coords.coordinates(x).unwrap().add(&coords.coordinates(y).unwrap());
        prop_assert_eq!(coords.coordinates(f.g.mul(x, y)).unwrap(), sum.clone());
        prop_assert_eq!(coords.decode(&sum), f.g.mul(x, y));
    }

    #[test]
    fn derivations_form_a_space_and_lift(k in 0usize..64, coeffs in prop::collection::vec(0u32..5, 8)) {
        let f = pick(k);
        let p = f.g.prime();
        let space = derivation_space(&f.g, &f.action, &f.action.full(), None).unwrap();
        let v = space
            .space()
            .basis()
            .iter()
            .zip(coeffs.iter().cycle())
            .fold(FpVector::zero(p, space.space().ambient()), |acc, (b, &c)| acc.add(&b.scale(c % p)));
        let images: Vec<Elem> = v.blocks(f.action.rank()).iter().map(|b| f.action.to_element(b)).collect();
        prop_assert!(extension_check(&f.g, &f.action, &images));
        let delta = Derivation::new(&f.g, &f.action, images).unwrap();
        let alpha = lift_derivation(&f.g, &f.action, &delta).unwrap();
        prop_assert_eq!(alpha.is_identity(), delta.is_zero());
        prop_assert!(alpha.order() == 1 || alpha.order() == p as u64);
        let again = Automorphism::from_pc_images(&f.g, alpha.images()).unwrap();
        prop_assert_eq!(again.map(), alpha.map());
    }

    #[test]
    fn rank_nullity(p in prop::sample::select(vec![2u32, 3, 5]), rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(any::<u32>(), 30)) {
        let m = FpMatrix::from_rows(p, cols, &(0..rows).map(|r| (0..cols).map(|c| seed[r * cols + c] % p).collect()).collect::<Vec<_>>());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.dim(), cols);
        for v in null.basis() {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        let x = FpVector::new(p, (0..cols).map(|c| seed[c] % p));
        let rhs = m.mul_vec(&x).unwrap();
        let solved = m.solve(&rhs).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&solved).unwrap(), rhs);
    }

    #[test]
    fn canonical_text_round_trips(k in 0usize..64, spaces in prop::collection::vec(0usize..3, 40)) {
        let g = &pick(k).g;
        let pres = g.presentation();
        let canonical = pres.canonical_text();
        // pad every token boundary with a random amount of whitespace
        let mut noisy = String::new();
        for (i, ch) in canonical.chars().enumerate() {
            noisy.push(ch);
            if ch == '=' || ch == ',' {
                noisy.push_str(&" ".repeat(spaces[i % spaces.len()]));
            }
        }
        let reparsed = parse_presentation(&noisy).unwrap();
        prop_assert_eq!(&reparsed, pres);
        prop_assert_eq!(reparsed.group_id(), pres.group_id());
    }
}
