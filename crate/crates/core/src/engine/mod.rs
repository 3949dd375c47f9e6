//! Routing a group through the criteria and assembling a certificate.

mod certificate;
mod criteria;
mod verify;

pub use certificate::{
    CenterProfile, Certificate, Criterion, FrattiniCenterProfile, HypothesisFlags, InnerLevel, Profile, RankBound,
    TranscriptEntry, Witness, NO_WITNESS, SCHEMA_VERSION, SKIPPED, WITNESS,
};
pub use criteria::{
    applies, check_p2, check_thm34, check_thm35, compute_profile, counting_inequalities, is_direct_factor, GroupFacts,
};
pub use verify::verify_certificate;

use crate::automorphisms::{
    brute_force_search, case_b_construct, find_noninner_derivation, is_inner, lift_derivation, Automorphism,
    SearchFamily, SearchLimits, SearchOutcome,
};
use crate::derivations::{derivation_space, ModuleAction};
use crate::error::EngineError;
use crate::group::FiniteGroup;
use crate::pc::PcGroup;
use crate::structure::RANK_CAP_EXPONENT;

/// Default largest group order accepted by [`analyze`].
pub const DEFAULT_ANALYSIS_CAP: usize = 4096;

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub max_order: usize,
    pub search: SearchLimits,
}

impl Default for Config {
    fn default() -> Self {
        Self { max_order: DEFAULT_ANALYSIS_CAP, search: SearchLimits::default() }
    }
}

/// A witness together with how it was found.
struct Found {
    alpha: Automorphism,
    construction: String,
}

struct Router<'a> {
    g: &'a PcGroup,
    action: &'a ModuleAction,
    config: &'a Config,
    transcript: Vec<TranscriptEntry>,
    frattini_search: Option<SearchOutcome>,
    derivation_attempted: bool,
}

impl<'a> Router<'a> {
    fn note(&mut self, check: &str, outcome: &str, detail: impl Into<String>) {
        self.transcript.push(TranscriptEntry::new(check, outcome, detail));
    }

    /// Lifts of derivation basis vectors, level by level. With the
    /// centralizer condition the subspace test picks the candidate and the
    /// exhaustive scan confirms it; without it every basis lift is scanned.
    fn derivation_witness(&mut self) -> Option<Found> {
        self.derivation_attempted = true;
        let g = self.g;
        let action = self.action;
        let z = action.center();
        for level in 1..=action.class() + 1 {
            if action.hypothesis_holds() {
                let Some(delta) = find_noninner_derivation(g, action, level).ok().flatten() else { continue };
                let alpha = lift_derivation(g, action, &delta).ok()?;
                if is_inner(g, z, &alpha).is_some() {
                    self.note(
                        "derivation-lift",
                        "internal-error",
                        format!("level {level}: derivation outside the inner subspace lifts to an inner automorphism"),
                    );
                    return None;
                }
                return Some(Found { alpha, construction: format!("derivation-lift level={level}") });
            }
            let space = derivation_space(g, action, action.level(level as isize - 1), None).ok()?;
            for (k, delta) in space.basis().iter().enumerate() {
                let alpha = lift_derivation(g, action, delta).ok()?;
                if is_inner(g, z, &alpha).is_none() {
                    return Some(Found { alpha, construction: format!("derivation-lift level={level} basis={k}") });
                }
            }
        }
        None
    }

    fn frattini_fixed_search(&mut self) -> Option<Found> {
        if self.frattini_search.is_none() {
            match brute_force_search(self.g, SearchFamily::FrattiniFixed, &self.config.search) {
                Ok(outcome) => {
                    self.note(
                        "search-frattini-fixed",
                        if outcome.found.is_some() { "found" } else { "exhausted" },
                        format!("{} candidate tuples", outcome.candidates),
                    );
                    self.frattini_search = Some(outcome);
                }
                Err(e) => {
                    self.note("search-frattini-fixed", "cap", e.to_string());
                    return None;
                }
            }
        }
        let outcome = self.frattini_search.as_ref()?;
        outcome.found.clone().map(|alpha| Found { alpha, construction: "search frattini-fixed".into() })
    }

    fn coset_search(&mut self) -> Option<Found> {
        match brute_force_search(self.g, SearchFamily::FrattiniCosets, &self.config.search) {
            Ok(outcome) => {
                self.note(
                    "search-frattini-cosets",
                    if outcome.found.is_some() { "found" } else { "exhausted" },
                    format!("{} candidate tuples", outcome.candidates),
                );
                outcome.found.map(|alpha| Found { alpha, construction: "search frattini-cosets".into() })
            }
            Err(e) => {
                self.note("search-frattini-cosets", "cap", e.to_string());
                None
            }
        }
    }

    fn attempt(&mut self, criterion: Criterion) -> Option<Found> {
        match criterion {
            Criterion::TwoGeneratorConstruction => match case_b_construct(self.g) {
                Ok(Some(alpha)) => Some(Found { alpha, construction: "two-generator construction".into() }),
                Ok(None) => {
                    self.note("two-generator-construction", "none", "no element k of order 3 in Z2 \\ Z outside G'");
                    None
                }
                Err(e) => {
                    self.note("two-generator-construction", "precondition", e.to_string());
                    None
                }
            },
            Criterion::CentralizerFallback => self.frattini_fixed_search(),
            Criterion::BruteForce => self.frattini_fixed_search().or_else(|| self.coset_search()),
            Criterion::NoneFound => None,
            _ => self.derivation_witness().or_else(|| self.frattini_fixed_search()),
        }
    }
}

/// Route `g` through the criteria in order and return a sealed certificate.
pub fn analyze(g: &PcGroup, config: &Config) -> Result<Certificate, EngineError> {
    if g.order() > config.max_order {
        return Err(EngineError::CapExceeded { order: g.order(), cap: config.max_order });
    }
    if g.is_abelian() {
        return Err(EngineError::Abelian);
    }
    let action = ModuleAction::build(g)?;
    let facts = GroupFacts::compute(g, &action);
    let mut router = Router {
        g,
        action: &action,
        config,
        transcript: Vec::new(),
        frattini_search: None,
        derivation_attempted: false,
    };
    router.note(
        "caps",
        "info",
        format!(
            "analysis order <= {}, subgroup enumeration order <= p^{}, coset search order <= {} with d(G) <= {}, candidate budget {}",
            config.max_order,
            RANK_CAP_EXPONENT,
            config.search.max_order,
            config.search.max_generators,
            config.search.max_candidates
        ),
    );
    router.note(
        "transversal",
        "info",
        action.transversal().iter().map(|&x| g.format(x)).collect::<Vec<_>>().join(", "),
    );
    if facts.profile.class != 3 {
        router.note("class", "info", format!("class {}: the class-3 criteria do not apply", facts.profile.class));
    }
    router.note(
        "direct-factor-readings",
        "info",
        format!(
            "Z in A*: {}, Omega1(Z) in Omega1(A*): {}",
            facts.center_direct_factor, facts.center_direct_factor_omega1
        ),
    );
    let mut level_gap = false;
    for level in 1..=action.class() + 1 {
        let i = level as isize;
        let der = derivation_space(g, &action, action.level(i - 1), None)?;
        let ider = crate::derivations::inner_space(g, &action, &action.a_star_level(g, i))?;
        level_gap |= der.dim() > action.level_dim(i);
        router.note(
            &format!("derivations-level-{level}"),
            "info",
            format!("d(Der(A_{})) = {}, d(Ider(A* meet Z_{level})) = {}, d(A_{level}) = {}", level - 1, der.dim(), ider.dim(), action.level_dim(i)),
        );
    }

    let mut chosen = None;
    for criterion in Criterion::ALL {
        let (holds, detail) = applies(criterion, &facts);
        if !holds {
            router.note(criterion.tag(), SKIPPED, detail);
            continue;
        }
        let attempt = router.attempt(criterion).filter(|found| {
            let ok = recheck(g, &action, criterion, &found.alpha);
            if let Err(reason) = &ok {
                router.transcript.push(TranscriptEntry::new("witness-recheck", "internal-error", reason.clone()));
            }
            ok.is_ok()
        });
        match attempt {
            Some(found) if criterion != Criterion::NoneFound => {
                router.note(criterion.tag(), WITNESS, format!("{detail}; {}", found.construction));
                chosen = Some((criterion, Some(found)));
                break;
            }
            _ if criterion == Criterion::NoneFound => {
                router.note(criterion.tag(), WITNESS, "bounded search found nothing; this is not a claim of non-existence");
                chosen = Some((criterion, None));
            }
            _ => router.note(criterion.tag(), NO_WITNESS, detail),
        }
    }
    let (criterion, found) = chosen.expect("the last criterion always applies");

    if found.is_none() || router.derivation_attempted && !found.as_ref().is_some_and(|f| f.construction.starts_with("derivation")) {
        for (label, lhs, rhs) in counting_inequalities(&action) {
            router.note("counting-inequality", if lhs <= rhs { "holds" } else { "violated" }, format!("{label}: {lhs} vs {rhs}"));
        }
    }
    let hypotheses = facts.flags.centralizer_of_zphi_is_phi && facts.flags.omega1_zphi_in_z3;
    if found.is_none() && hypotheses && (level_gap || router.transcript.iter().any(|e| e.outcome == "violated")) {
        router.note("consistency", "internal-error", "a dimension gap or violated inequality without a witness");
    }

    let witness = found.map(|f| {
        let fixes = f.alpha.fixes_pointwise(action.frattini());
        Witness {
            generator_images: f.alpha.images().iter().map(|&y| g.exponents(y)).collect(),
            order: f.alpha.order(),
            fixes_frattini: fixes,
            construction: f.construction,
        }
    });
    let cert = Certificate {
        schema_version: SCHEMA_VERSION,
        group_id: g.presentation().group_id(),
        profile: facts.profile,
        hypothesis_flags: facts.flags,
        criterion,
        witness,
        transcript: router.transcript,
        digest: String::new(),
    }
    .seal();
    Ok(cert)
}

/// Exhaustive checks on a candidate witness before it is emitted.
fn recheck(g: &PcGroup, action: &ModuleAction, criterion: Criterion, alpha: &Automorphism) -> Result<(), String> {
    alpha.verify_all_pairs(g).map_err(|e| e.to_string())?;
    if alpha.order() != g.prime() as u64 {
        return Err(format!("order {} instead of {}", alpha.order(), g.prime()));
    }
    if criterion.requires_frattini_fixed() && !alpha.fixes_pointwise(action.frattini()) {
        return Err("moves an element of the Frattini subgroup".into());
    }
    if let Some(h) = verify::conjugating_element(g, alpha) {
        return Err(format!("equals conjugation by {}", g.format(h)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const D16XC2XC2: &str = "p=2; n=6; g2^2=g3; g3^2=g4; [g2,g1]=g3*g4; [g3,g1]=g4";
    const W81: &str = "p=3; n=4; [g2,g1]=g3; [g3,g1]=g4";

    fn certify(text: &str) -> (PcGroup, Certificate) {
        let g = PcGroup::from_text(text, 1 << 12).unwrap();
        let cert = analyze(&g, &Config::default()).unwrap();
        (g, cert)
    }

    #[test]
    fn tags_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(Criterion::from_tag(c.tag()), Some(c));
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.tag()));
        }
        assert_eq!(Criterion::from_tag("Thm9.9"), None);
    }

    #[test]
    fn non_cyclic_center_two_group() {
        let (g, cert) = certify(D16XC2XC2);
        assert_eq!(cert.criterion, Criterion::EvenNonCyclicCenter);
        assert_eq!(cert.profile.center.invariants, vec![2, 2, 2]);
        verify_certificate(&g, &cert).unwrap();
    }

    #[test]
    fn skipped_construction_is_recorded() {
        let (g, cert) = certify(W81);
        let outcome = |tag: &str| cert.transcript.iter().find(|e| e.check == tag).map(|e| e.outcome.clone());
        assert_eq!(outcome("Thm4.4-caseB").as_deref(), Some(NO_WITNESS));
        assert_eq!(outcome("Thm3.4(1)").as_deref(), Some(SKIPPED));
        assert_eq!(cert.criterion, Criterion::CentralizerFallback);
        verify_certificate(&g, &cert).unwrap();
    }

    #[test]
    fn digest_covers_the_body() {
        let (_, cert) = certify(W81);
        assert_eq!(cert.digest, cert.compute_digest());
        let mut changed = cert.clone();
        changed.transcript.pop();
        assert_ne!(changed.compute_digest(), cert.digest);
        assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn caps_and_abelian_inputs() {
        let g = PcGroup::from_text(W81, 1 << 12).unwrap();
        let tight = Config { max_order: 27, ..Config::default() };
        assert_eq!(analyze(&g, &tight), Err(EngineError::CapExceeded { order: 81, cap: 27 }));
        let abelian = PcGroup::from_text("p=3; n=2", 1 << 12).unwrap();
        assert_eq!(analyze(&abelian, &Config::default()), Err(EngineError::Abelian));
    }

    #[test]
    fn verifier_names_the_failing_check() {
        let (g, cert) = certify(W81);
        let check = |c: &Certificate| verify_certificate(&g, c).unwrap_err().check;

        let mut m = cert.clone();
        m.schema_version += 1;
        assert_eq!(check(&m), "schema_version");

        let mut m = cert.clone();
        m.group_id = "0".repeat(64);
        assert_eq!(check(&m), "group_id");

        let mut m = cert.clone();
        m.profile.dim_a += 1;
        assert_eq!(check(&m), "profile.dim_a");

        let mut m = cert.clone();
        m.criterion = Criterion::BruteForce;
        assert_eq!(check(&m), "criterion.priority");

        let mut m = cert.clone();
        m.criterion = Criterion::LargePrime;
        assert_eq!(check(&m), "criterion.preconditions");

        let mut m = cert.clone();
        m.witness = None;
        assert_eq!(check(&m), "witness.presence");

        let mut m = cert.clone();
        m.witness.as_mut().unwrap().generator_images[0] = vec![0; 4];
        assert_eq!(check(&m), "witness.bijective");

        let mut m = cert.clone();
        m.witness.as_mut().unwrap().order = 9;
        assert_eq!(check(&m), "witness.order");

        let mut m = cert.clone();
        m.digest = "0".repeat(64);
        assert_eq!(check(&m), "digest");
    }

    #[test]
    fn inner_witness_is_rejected() {
        let (g, mut cert) = certify(W81);
        let conj = Automorphism::conjugation(&g, g.pc_generator(1));
        cert.witness.as_mut().unwrap().generator_images = conj.images().iter().map(|&y| g.exponents(y)).collect();
        assert_eq!(verify_certificate(&g, &cert).unwrap_err().check, "witness.non_inner");
    }
}
