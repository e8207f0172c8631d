use std::sync::Arc;

use serde_json::json;

use super::certificate::{certify_igusa_todorov, certify_rep_finite, certify_syzygy_finite, Certificate, Strength};
use super::{Check, Conclusion, Config, Hints, Verdict, VerdictError};
use crate::algebra::{ideal_product, push_forward_ideal, quotient_algebra, radical_power, Algebra, Ideal};
use crate::homological::{chain_resolution, ideal_pair_sequences, PdResult, SyzygyTable};
use crate::rep::{ideal_as_module, quotient_as_module, simple, Representation};

/// An ideal with the name used in reports and hint lookups.
pub type Named = (String, Ideal);

fn simples(a: &Arc<Algebra>) -> Vec<Representation> {
    (0..a.num_vertices())
        .map(|v| simple(a, v).expect("vertex in range"))
        .collect()
}

fn pd_check(t: &mut SyzygyTable, name: &str, m: &Representation, cutoff: usize) -> (Check, PdResult) {
    let r = t.pd(m, cutoff).result;
    let c = Check::new(format!("pd_finite:{name}"), r.finite().is_some(), json!(r));
    (c, r)
}

fn cert_check(name: String, c: &Option<Certificate>) -> Check {
    Check::new(name, c.is_some(), json!(c))
}

fn same_ideal(i: &Ideal, j: &Ideal) -> bool {
    i.is_subideal_of(j) && j.is_subideal_of(i)
}

/// Two ideals with `IJ·radA = 0`; the algebra is Igusa–Todorov when `A/I`
/// is representation-finite, `pd J < ∞` and `A/J` syzygy-finite, or the
/// same with `I` and `J` swapped, or both quotients are syzygy-finite and
/// both ideals have finite pd. With `I = J` this is the square criterion.
pub fn check_ij(a: &Arc<Algebra>, i: &Named, j: &Named, hints: &Hints, cfg: &Config) -> Result<Verdict, VerdictError> {
    let square = same_ideal(&i.1, &j.1);
    let mut v = Verdict::new(a.name(), if square { "ideal_square" } else { "ideal_pair" }, cfg);
    let ij = ideal_product(&i.1, &j.1)?;
    let ijr = ideal_product(&ij, &radical_power(a, 1))?;
    let hypothesis = Check::new(
        "product_kills_radical",
        ijr.is_zero(),
        json!({ "dim_ij": ij.dim(), "dim_ij_rad": ijr.dim() }),
    );

    let mut t = SyzygyTable::new(a, cfg.seed);
    let (pd_i, _) = pd_check(&mut t, &i.0, &ideal_as_module(a, &i.1)?, cfg.cutoff);
    let (pd_j, _) = pd_check(&mut t, &j.0, &ideal_as_module(a, &j.1)?, cfg.cutoff);
    let qi = quotient_algebra(a, &i.1)?;
    let qj = quotient_algebra(a, &j.1)?;
    let rf_i = cert_check(format!("rep_finite:A/{}", i.0), &certify_rep_finite(qi.quotient(), &i.0, hints));
    let rf_j = cert_check(format!("rep_finite:A/{}", j.0), &certify_rep_finite(qj.quotient(), &j.0, hints));
    let sf_i = cert_check(format!("syzygy_finite:A/{}", i.0), &certify_syzygy_finite(qi.quotient(), &i.0, hints, cfg));
    let sf_j = cert_check(format!("syzygy_finite:A/{}", j.0), &certify_syzygy_finite(qj.quotient(), &j.0, hints, cfg));

    let mut clauses: Vec<(&str, Vec<Check>)> = vec![
        ("rep_finite_mod_i", vec![rf_i, pd_j.clone(), sf_j.clone()]),
        ("rep_finite_mod_j", vec![rf_j, pd_i.clone(), sf_i.clone()]),
        ("both_syzygy_finite", vec![sf_i, sf_j, pd_i, pd_j]),
    ];
    for (_, cs) in clauses.iter_mut() {
        let mut seen = Vec::new();
        cs.retain(|c| {
            let fresh = !seen.contains(&c.name);
            seen.push(c.name.clone());
            fresh
        });
    }
    v.checks.push(hypothesis);
    match clauses.iter().position(|(_, cs)| cs.iter().all(|c| c.holds)) {
        Some(k) => {
            v.clause = Some(clauses[k].0.to_string());
            v.checks.extend(clauses[k].1.iter().cloned());
            for (name, cs) in &clauses[..k] {
                let failed: Vec<&str> = cs.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
                v.notes.push(format!("clause {name} fails: {}", failed.join(", ")));
            }
        }
        None => {
            for (name, cs) in &clauses {
                let failed: Vec<&str> = cs.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
                v.notes.push(format!("clause {name} fails: {}", failed.join(", ")));
                for c in cs {
                    if v.check(&c.name).is_none() {
                        v.checks.push(c.clone());
                    }
                }
            }
        }
    }

    // The constructive step of the proof, replayed on every simple.
    let mut per_simple = Vec::new();
    let mut ok = true;
    for s in simples(a) {
        match ideal_pair_sequences(&s, &i.1, &j.1) {
            Ok(p) => {
                let c = p.checks();
                ok &= p.exact && (!p.hypothesis || (p.i_kills_c1 && p.j_kills_c2));
                per_simple.push(json!(c));
            }
            Err(e) => {
                ok = false;
                per_simple.push(json!({ "error": e.to_string() }));
            }
        }
    }
    v.checks.push(Check::new("pair_sequences", ok, json!(per_simple)));
    v.conclude(Conclusion::IgusaTodorov);
    Ok(v)
}

/// `0 = I_0 ⊆ I_1 ⊆ ... ⊆ I_n` with `pd I_{i+1} < ∞` and
/// `(I_{i+1}/I_i)·rad(A/I_i) = 0`; `A` inherits syzygy-finiteness
/// (or boundedness, or the Igusa–Todorov property) from `A/I_n`.
///
/// A leading zero ideal is added if `chain` does not start with one.
pub fn check_chain(a: &Arc<Algebra>, chain: &[Named], hints: &Hints, cfg: &Config) -> Result<Verdict, VerdictError> {
    let mut full: Vec<Named> = Vec::with_capacity(chain.len() + 1);
    if chain.first().is_none_or(|c| !c.1.is_zero()) {
        full.push(("0".to_string(), Ideal::zero(a)));
    }
    full.extend(chain.iter().cloned());
    for k in 0..full.len() - 1 {
        if !Arc::ptr_eq(full[k + 1].1.owner(), a) || !full[k].1.is_subideal_of(&full[k + 1].1) {
            return Err(VerdictError::ChainNotNested(k + 1));
        }
    }
    let n = full.len() - 1;
    let theorem = if n == 1 { "radical_annihilated_ideal" } else { "ideal_chain" };
    let mut v = Verdict::new(a.name(), theorem, cfg);
    let names: Vec<&str> = full.iter().map(|c| c.0.as_str()).collect();
    v.checks.push(Check::new("nested", true, json!({ "chain": names })));

    let mut t = SyzygyTable::new(a, cfg.seed);
    let rad = |b: &Arc<Algebra>| radical_power(b, 1);
    for k in 0..n {
        let (lo, hi) = (&full[k], &full[k + 1]);
        let q = quotient_algebra(a, &lo.1)?;
        let pushed = push_forward_ideal(&q, &hi.1)?;
        let prod = ideal_product(&pushed, &rad(q.quotient()))?;
        v.checks.push(Check::new(
            format!("kills_radical:{}/{}", hi.0, lo.0),
            prod.is_zero(),
            json!({ "dim_quotient_ideal": pushed.dim(), "dim_product": prod.dim() }),
        ));
        let (c, _) = pd_check(&mut t, &hi.0, &ideal_as_module(a, &hi.1)?, cfg.cutoff);
        v.checks.push(c);
    }

    // gd of add(⊕ A/I_i), i < n: finite whenever the ideals have finite pd.
    let mut gd = Some(0);
    let mut pds = Vec::new();
    for c in &full[..n] {
        let r = t.pd(&quotient_as_module(a, &c.1)?, cfg.cutoff).result;
        gd = gd.zip(r.finite()).map(|(x, y)| x.max(y));
        pds.push(json!({ "quotient": format!("A/{}", c.0), "pd": r }));
    }
    v.checks.push(Check::new("quotients_finite_pd", gd.is_some(), json!({ "gd": gd, "quotients": pds })));

    let last = &full[n];
    let qn = quotient_algebra(a, &last.1)?;
    let cert = certify_igusa_todorov(qn.quotient(), &last.0, hints, cfg);
    v.checks.push(cert_check(format!("certificate:A/{}", last.0), &cert));

    let ideals: Vec<Ideal> = full.iter().map(|c| c.1.clone()).collect();
    let mut per_simple = Vec::new();
    let mut ok = true;
    for s in simples(a) {
        match chain_resolution(&s, &ideals) {
            Ok(r) => {
                let annihilated = r.annihilated.iter().all(|&b| b);
                ok &= r.exact && annihilated;
                per_simple.push(json!({
                    "exact": r.exact,
                    "annihilated": r.annihilated,
                    "dims": r.xs.iter().map(|x| x.dim()).collect::<Vec<_>>(),
                }));
            }
            Err(e) => {
                ok = false;
                per_simple.push(json!({ "error": e.to_string() }));
            }
        }
    }
    v.checks.push(Check::new("chain_resolution", ok, json!(per_simple)));

    let conclusion = match cert.map(|c| c.strength) {
        Some(Strength::RepFinite | Strength::SyzygyFinite) => Conclusion::SyzygyFinite,
        Some(Strength::SyzygyBounded) => Conclusion::SyzygyBounded,
        Some(Strength::IgusaTodorov) => Conclusion::IgusaTodorov,
        None => Conclusion::Inconclusive,
    };
    v.conclude(conclusion);
    Ok(v)
}

/// Evaluates the criteria phrased through powers of the radical; one
/// verdict for each criterion whose Loewy-length condition holds.
pub fn scan_radical_conditions(a: &Arc<Algebra>, hints: &Hints, cfg: &Config) -> Result<Vec<Verdict>, VerdictError> {
    let ll = a.nilpotency_index();
    if a.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut t = SyzygyTable::new(a, cfg.seed);
    let mut pd_rad = |k: usize| -> Result<(Check, PdResult), VerdictError> {
        let m = ideal_as_module(a, &radical_power(a, k))?;
        Ok(pd_check(&mut t, &format!("rad^{k}"), &m, cfg.cutoff))
    };
    let loewy = |k: usize| Check::new(format!("rad^{k}=0"), ll <= k, json!({ "loewy_length": ll }));
    let mut out = Vec::new();

    // rad^{2n+1} = 0, pd rad^n < ∞ and A/rad^n syzygy-finite; the first
    // n that works.
    let lo = ll.saturating_sub(1).div_ceil(2).max(1);
    let hi = ll.saturating_sub(1).max(lo);
    let mut first: Option<Verdict> = None;
    for n in lo..=hi {
        let mut v = Verdict::new(a.name(), "radical_power_square", cfg);
        v.clause = Some(format!("n={n}"));
        v.checks.push(loewy(2 * n + 1));
        v.checks.push(pd_rad(n)?.0);
        let q = quotient_algebra(a, &radical_power(a, n))?;
        let key = format!("rad^{n}");
        v.checks.push(cert_check(format!("syzygy_finite:A/{key}"), &certify_syzygy_finite(q.quotient(), &key, hints, cfg)));
        v.conclude(Conclusion::FindimFinite);
        if v.is_conclusive() {
            first = Some(v);
            break;
        }
        first.get_or_insert(v);
    }
    if let Some(mut v) = first {
        v.notes.push(format!("candidates n = {lo}..={hi}"));
        out.push(v);
    }

    // rad^5 = 0 and pd rad² < ∞; A/rad² has radical square zero.
    if ll <= 5 {
        let mut v = Verdict::new(a.name(), "radical_fifth_power", cfg);
        v.checks.push(loewy(5));
        v.checks.push(pd_rad(2)?.0);
        v.conclude(Conclusion::FindimFinite);
        out.push(v);
    }

    // Chains of radical powers down to rad³ (Igusa–Todorov) and rad²
    // (syzygy-finite).
    for (stop, clause) in [(3, "from_cube"), (2, "from_square")] {
        let chain: Vec<Named> = (stop..ll)
            .rev()
            .map(|k| (format!("rad^{k}"), radical_power(a, k)))
            .collect();
        let mut v = check_chain(a, &chain, hints, cfg)?;
        v.theorem = "radical_chain".to_string();
        v.clause = Some(clause.to_string());
        out.push(v);
    }

    // rad^4 = 0 and pd rad² < ∞ or pd rad³ < ∞.
    if ll <= 4 {
        let mut v = Verdict::new(a.name(), "radical_fourth_power", cfg);
        v.checks.push(loewy(4));
        let (c2, r2) = pd_rad(2)?;
        let (_, r3) = pd_rad(3)?;
        let either = c2.holds || r3.finite().is_some();
        v.checks.push(Check::new("pd_finite:rad^2|rad^3", either, json!({ "rad^2": r2, "rad^3": r3 })));
        v.conclude(Conclusion::FindimFinite);
        out.push(v);
    }
    Ok(out)
}
