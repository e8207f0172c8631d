use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Config, Hints};
use crate::algebra::{separated_quiver_dynkin, Algebra};
use crate::homological::{PdResult, SyzygyTable};
use crate::rep::simple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    Semisimple,
    Monomial,
    RadSquareZero,
    RadSquareZeroDynkin,
    RadCubeZero,
    FiniteGlobalDimension,
    UserAsserted,
}

/// What a certificate establishes, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strength {
    RepFinite,
    SyzygyFinite,
    SyzygyBounded,
    IgusaTodorov,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub strength: Strength,
    pub evidence: serde_json::Value,
}

fn cert(kind: CertificateKind, strength: Strength, evidence: serde_json::Value) -> Option<Certificate> {
    Some(Certificate { kind, strength, evidence })
}

fn presentation_facts(a: &Algebra) -> serde_json::Value {
    match a.presentation() {
        Some(p) => json!({
            "vertices": p.quiver.vertices.len(),
            "arrows": p.quiver.arrows.len(),
            "relations": p.relations.iter().map(|r| r.display(&p.quiver, p.field)).collect::<Vec<_>>(),
        }),
        None => json!(null),
    }
}

/// Semisimple, monomial, radical square zero, finite global dimension or
/// asserted by `key` in the hints; the first that applies.
pub fn certify_syzygy_finite(a: &Arc<Algebra>, key: &str, hints: &Hints, cfg: &Config) -> Option<Certificate> {
    let ll = a.nilpotency_index();
    if ll <= 1 {
        return cert(CertificateKind::Semisimple, Strength::SyzygyFinite, json!({ "loewy_length": ll }));
    }
    if a.is_monomial() == Ok(true) {
        return cert(CertificateKind::Monomial, Strength::SyzygyFinite, presentation_facts(a));
    }
    if ll <= 2 {
        return cert(CertificateKind::RadSquareZero, Strength::SyzygyFinite, json!({ "loewy_length": ll }));
    }
    let mut t = SyzygyTable::new(a, cfg.seed);
    let pds: Vec<PdResult> = (0..a.num_vertices())
        .map(|v| t.pd(&simple(a, v).expect("vertex in range"), cfg.cutoff).result)
        .collect();
    if pds.iter().all(|p| p.finite().is_some()) {
        let gd = pds.iter().filter_map(PdResult::finite).max().unwrap_or(0);
        return cert(
            CertificateKind::FiniteGlobalDimension,
            Strength::SyzygyFinite,
            json!({ "global_dimension": gd, "simples": pds }),
        );
    }
    if Hints::has(&hints.syzygy_finite, key) {
        return cert(CertificateKind::UserAsserted, Strength::SyzygyFinite, json!({ "asserted": key }));
    }
    None
}

/// A syzygy-finite certificate, else syzygy-bounded or Igusa–Todorov:
/// radical cube zero algebras are Igusa–Todorov.
pub fn certify_igusa_todorov(a: &Arc<Algebra>, key: &str, hints: &Hints, cfg: &Config) -> Option<Certificate> {
    if let Some(c) = certify_syzygy_finite(a, key, hints, cfg) {
        return Some(c);
    }
    if Hints::has(&hints.syzygy_bounded, key) {
        return cert(CertificateKind::UserAsserted, Strength::SyzygyBounded, json!({ "asserted": key }));
    }
    let ll = a.nilpotency_index();
    if ll <= 3 {
        return cert(CertificateKind::RadCubeZero, Strength::IgusaTodorov, json!({ "loewy_length": ll }));
    }
    if Hints::has(&hints.igusa_todorov, key) {
        return cert(CertificateKind::UserAsserted, Strength::IgusaTodorov, json!({ "asserted": key }));
    }
    None
}

/// Semisimple, radical square zero with Dynkin separated quiver, or
/// asserted.
pub fn certify_rep_finite(a: &Arc<Algebra>, key: &str, hints: &Hints) -> Option<Certificate> {
    let ll = a.nilpotency_index();
    if ll <= 1 {
        return cert(CertificateKind::Semisimple, Strength::RepFinite, json!({ "loewy_length": ll }));
    }
    if ll <= 2 {
        if let Ok(Some(d)) = separated_quiver_dynkin(a) {
            let names: Vec<String> = d.components.iter().map(|c| c.to_string()).collect();
            return cert(CertificateKind::RadSquareZeroDynkin, Strength::RepFinite, json!({ "components": names }));
        }
    }
    if Hints::has(&hints.rep_finite, key) {
        return cert(CertificateKind::UserAsserted, Strength::RepFinite, json!({ "asserted": key }));
    }
    None
}
