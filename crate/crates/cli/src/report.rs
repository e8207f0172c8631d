//! Each report is built once as JSON and once as text from the same data.

use std::fmt::Write as _;

use findim::algebra::Algebra;
use findim::homological::{OrbitResult, OrbitStatus, PdReport, PdResult, SyzygyTable};
use findim::igusa_todorov::PsiResult;
use findim::krull_schmidt::Decomposition;
use findim::verdict::{Replay, Verdict};
use serde_json::{json, Value};

pub struct Report {
    pub json: Value,
    pub text: String,
}

fn class_name(t: &SyzygyTable, id: usize) -> String {
    let c = t.registry().class(id);
    match c.projective {
        Some(v) => format!("P({})", t.owner().vertex_names()[v]),
        None => format!("M{id}{:?}", c.representative.dims()),
    }
}

fn summands_json(t: &SyzygyTable, d: &Decomposition) -> Value {
    d.parts
        .iter()
        .map(|&(id, k)| {
            let c = t.registry().class(id);
            json!({
                "class": id,
                "multiplicity": k,
                "dims": c.representative.dims(),
                "projective": c.projective.map(|v| t.owner().vertex_names()[v].clone()),
            })
        })
        .collect()
}

fn summands_text(t: &SyzygyTable, d: &Decomposition) -> String {
    if d.is_empty() {
        return "0".into();
    }
    d.parts
        .iter()
        .map(|&(id, k)| {
            if k == 1 {
                class_name(t, id)
            } else {
                format!("{}^{k}", class_name(t, id))
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

pub fn pd_text(r: &PdResult) -> String {
    match r {
        PdResult::Finite { pd } => format!("Finite({pd})"),
        PdResult::InfiniteCertified { j, k } => format!("InfiniteCertified(Ω^{j} ≅ Ω^{k})"),
        PdResult::Recurrent { step, cycle } => format!("Recurrent(from step {step}, cycle {cycle:?})"),
        PdResult::Unknown { cutoff, note } => match note {
            Some(n) => format!("Unknown(cutoff {cutoff}: {n})"),
            None => format!("Unknown(cutoff {cutoff})"),
        },
    }
}

pub fn basis(a: &Algebra) -> Report {
    let names = a.vertex_names();
    let elems: Vec<Value> = a
        .basis()
        .iter()
        .map(|b| {
            json!({
                "degree": b.degree,
                "source": names[b.source],
                "target": names[b.target],
                "label": b.label,
            })
        })
        .collect();
    let json = json!({
        "algebra": a.name(),
        "field": a.field().p(),
        "dim": a.dim(),
        "dims_by_degree": a.dims_by_degree(),
        "nilpotency_index": a.nilpotency_index(),
        "basis": elems,
    });
    let mut text = format!(
        "{} over GF({}): dim {}, nilpotency index {}\n",
        a.name(),
        a.field().p(),
        a.dim(),
        a.nilpotency_index()
    );
    for (d, n) in a.dims_by_degree().iter().enumerate() {
        let labels: Vec<&str> = a.degree_range(d).map(|i| a.elem(i).label.as_str()).collect();
        let _ = writeln!(text, "  degree {d} ({n}): {}", labels.join(" "));
    }
    Report { json, text }
}

pub fn pd(module: &str, r: &PdReport, t: &SyzygyTable) -> Report {
    let steps: Vec<Value> = r.steps.iter().map(|d| summands_json(t, d)).collect();
    let json = json!({ "module": module, "pd": r.result, "steps": steps });
    let mut text = format!("pd {module} = {}\n", pd_text(&r.result));
    for (n, d) in r.steps.iter().enumerate() {
        let _ = writeln!(text, "  Ω^{n}: {}", summands_text(t, d));
    }
    Report { json, text }
}

pub fn syzygies(module: &str, steps: &[(usize, Vec<usize>, Decomposition)], t: &SyzygyTable) -> Report {
    let json = json!({
        "module": module,
        "syzygies": steps
            .iter()
            .map(|(n, dims, d)| json!({ "step": n, "dims": dims, "summands": summands_json(t, d) }))
            .collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (n, dims, d) in steps {
        let _ = writeln!(text, "Ω^{n} {module}: dims {dims:?} = {}", summands_text(t, d));
    }
    Report { json, text }
}

pub fn decomposition(module: &str, dims: &[usize], d: &Decomposition, t: &SyzygyTable) -> Report {
    let json = json!({ "module": module, "dims": dims, "summands": summands_json(t, d) });
    let text = format!("{module} (dims {dims:?}) = {}\n", summands_text(t, d));
    Report { json, text }
}

pub fn psi(module: &str, r: &PsiResult) -> Report {
    let json = json!({ "module": module, "psi": r });
    let mut text = format!("ψ({module}) = {} with φ = {}\n", r.psi, r.phi);
    let _ = writeln!(
        text,
        "  ranks {:?}{}",
        r.trace.ranks,
        if r.trace.certified { "" } else { " (not certified: orbit still growing at the bound)" }
    );
    Report { json, text }
}

pub fn orbit(modules: &[String], o: &OrbitResult, t: &SyzygyTable) -> Report {
    let json = json!({ "modules": modules, "orbit": o, "classes": t.registry().dump() });
    let mut text = String::new();
    for (n, ids) in o.steps.iter().enumerate() {
        let names: Vec<String> = ids.iter().map(|&id| class_name(t, id)).collect();
        let _ = writeln!(text, "  Ω^{n}: {}", names.join(" "));
    }
    let status = match &o.status {
        OrbitStatus::Closed { step, closure } => format!("closed from step {step}, {} classes", closure.len()),
        OrbitStatus::Inconclusive { bound } => format!("still growing at bound {bound}"),
    };
    Report {
        json,
        text: format!("orbit of {}: {status}\n{text}", modules.join(", ")),
    }
}

pub fn verdicts(vs: &[Verdict]) -> Report {
    let mut text = String::new();
    for v in vs {
        let clause = v.clause.as_ref().map(|c| format!(" ({c})")).unwrap_or_default();
        let _ = writeln!(text, "{}: {}{clause}", v.algebra, v.theorem);
        for c in &v.checks {
            let _ = writeln!(text, "  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name);
        }
        for n in &v.notes {
            let _ = writeln!(text, "  note: {n}");
        }
        let _ = writeln!(
            text,
            "  conclusion: {:?}{}",
            v.conclusion,
            if v.findim_finite { ", finitistic dimension finite" } else { "" }
        );
    }
    Report {
        json: serde_json::to_value(vs).expect("verdicts serialise"),
        text,
    }
}

pub fn replay(r: &Replay) -> Report {
    let mut text = format!(
        "replayed {} verdicts, {} checks: {}\n",
        r.verdicts,
        r.checks,
        if r.agrees() { "all agree" } else { "MISMATCH" }
    );
    for m in &r.mismatches {
        let _ = writeln!(text, "  {m}");
    }
    Report {
        json: serde_json::to_value(r).expect("replay serialises"),
        text,
    }
}
