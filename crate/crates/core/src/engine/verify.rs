use rayon::prelude::*;
use serde_json::Value;

use super::certificate::{Certificate, Criterion, NO_WITNESS, SCHEMA_VERSION, WITNESS};
use super::criteria::{applies, GroupFacts};
use crate::automorphisms::Automorphism;
use crate::derivations::ModuleAction;
use crate::error::VerifyError;
use crate::group::{Elem, FiniteGroup};
use crate::pc::PcGroup;
use crate::structure::frattini;

/// Some `h ∈ G` with `α(x) = h⁻¹xh` for every `x`, scanning all of `G`.
pub(crate) fn conjugating_element(g: &PcGroup, alpha: &Automorphism) -> Option<Elem> {
    let gens = g.generators();
    g.elements()
        .into_par_iter()
        .find_first(|&h| gens.iter().zip(alpha.images()).all(|(&s, &y)| g.conj(s, h) == y))
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("certificate fields serialize")
}

fn fail(check: impl Into<String>, detail: impl Into<String>) -> Result<(), VerifyError> {
    Err(VerifyError::new(check, detail))
}

/// Leaf-by-leaf comparison of two JSON values; the first differing path.
fn first_difference(prefix: &str, expected: &Value, claimed: &Value) -> Option<(String, String)> {
    match (expected, claimed) {
        (Value::Object(e), Value::Object(c)) => {
            for (key, ev) in e {
                let path = format!("{prefix}.{key}");
                match c.get(key) {
                    Some(cv) => {
                        if let Some(diff) = first_difference(&path, ev, cv) {
                            return Some(diff);
                        }
                    }
                    None => return Some((path, "missing".into())),
                }
            }
            c.keys()
                .find(|k| !e.contains_key(*k))
                .map(|k| (format!("{prefix}.{k}"), "unexpected field".into()))
        }
        (Value::Array(e), Value::Array(c)) if e.len() == c.len() => e
            .iter()
            .zip(c)
            .enumerate()
            .find_map(|(i, (ev, cv))| first_difference(&format!("{prefix}[{i}]"), ev, cv)),
        _ if expected == claimed => None,
        _ => Some((prefix.to_string(), format!("recomputed {expected}, certificate says {claimed}"))),
    }
}

/// Re-check a certificate against `g`, trusting only the multiplication.
/// The error names the first check that failed.
pub fn verify_certificate(g: &PcGroup, cert: &Certificate) -> Result<(), VerifyError> {
    if cert.schema_version != SCHEMA_VERSION {
        return fail(
            "schema_version",
            format!("certificate has schema version {}, this verifier reads version {SCHEMA_VERSION}", cert.schema_version),
        );
    }
    let id = g.presentation().group_id();
    if cert.group_id != id {
        return fail("group_id", format!("certificate is for {}, presentation hashes to {id}", cert.group_id));
    }

    let action = ModuleAction::build(g).map_err(|e| VerifyError::new("profile", e.to_string()))?;
    let facts = GroupFacts::compute(g, &action);
    if let Some((path, detail)) = first_difference("profile", &value(&facts.profile), &value(&cert.profile)) {
        return fail(path, detail);
    }
    if let Some((path, detail)) =
        first_difference("hypothesis_flags", &value(&facts.flags), &value(&cert.hypothesis_flags))
    {
        return fail(path, detail);
    }

    let (holds, detail) = applies(cert.criterion, &facts);
    if !holds {
        return fail("criterion.preconditions", format!("{} does not apply: {detail}", cert.criterion));
    }
    let outcome_of = |c: Criterion| cert.transcript.iter().rev().find(|e| e.check == c.tag()).map(|e| e.outcome.as_str());
    for &earlier in Criterion::ALL.iter().take_while(|&&c| c != cert.criterion) {
        if applies(earlier, &facts).0 && outcome_of(earlier) != Some(NO_WITNESS) {
            return fail(
                "criterion.priority",
                format!("{earlier} applies and precedes {} but is not recorded as {NO_WITNESS}", cert.criterion),
            );
        }
    }
    if outcome_of(cert.criterion) != Some(WITNESS) {
        return fail("criterion.priority", format!("transcript does not record {} as the deciding criterion", cert.criterion));
    }

    let witness = match (&cert.witness, cert.criterion) {
        (Some(_), Criterion::NoneFound) => return fail("witness.presence", "NONE-FOUND certificate carries a witness"),
        (None, Criterion::NoneFound) => return check_digest(cert),
        (None, c) => return fail("witness.presence", format!("{c} certificate has no witness")),
        (Some(w), _) => w,
    };

    let n = g.ngens();
    let p = g.prime();
    if witness.generator_images.len() != n {
        return fail("witness.generator_images", format!("{} images for {n} pc generators", witness.generator_images.len()));
    }
    let mut images = Vec::with_capacity(n);
    for (k, e) in witness.generator_images.iter().enumerate() {
        if e.len() != n || e.iter().any(|&x| x >= p) {
            return fail("witness.generator_images", format!("image of g{} is not an exponent vector mod {p}", k + 1));
        }
        images.push(g.element(e));
    }
    let alpha = match Automorphism::from_pc_images(g, &images) {
        Ok(a) => a,
        Err(crate::error::AutomorphismError::NotBijective) => return fail("witness.bijective", "images do not generate G"),
        Err(e) => return fail("witness.homomorphism", e.to_string()),
    };
    if let Err(e) = alpha.verify_all_pairs(g) {
        return fail("witness.homomorphism", e.to_string());
    }
    if alpha.order() != p as u64 {
        return fail("witness.order", format!("automorphism has order {}, expected {p}", alpha.order()));
    }
    if witness.order != alpha.order() {
        return fail("witness.order", format!("recorded order {} but the map has order {}", witness.order, alpha.order()));
    }
    if let Some(h) = conjugating_element(g, &alpha) {
        return fail("witness.non_inner", format!("equals conjugation by {}", g.format(h)));
    }
    let fixes = alpha.fixes_pointwise(&frattini(g));
    if fixes != witness.fixes_frattini {
        return fail("witness.fixes_frattini", format!("recorded {}, recomputed {fixes}", witness.fixes_frattini));
    }
    if cert.criterion.requires_frattini_fixed() && !fixes {
        return fail("witness.fixes_frattini", format!("{} requires a witness fixing the Frattini subgroup", cert.criterion));
    }
    check_digest(cert)
}

fn check_digest(cert: &Certificate) -> Result<(), VerifyError> {
    let digest = cert.compute_digest();
    if digest != cert.digest {
        return fail("digest", format!("recomputed {digest}, certificate says {}", cert.digest));
    }
    Ok(())
}
