use std::collections::BTreeSet;

use serde::Serialize;

use crate::homological::{nth_syzygy, HomError, OrbitStatus, SyzygyTable};
use crate::krull_schmidt::Decomposition;
use crate::linalg::Mat;
use crate::rep::{direct_sum, hom_space, kernel, proj, Hom, Representation, ShortExact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Approximation {
    /// `Ω^n M` already lies in `add V`: `0 -> 0 -> Ω^n M -> Ω^n M -> 0`.
    Identity,
    /// `V_0 = ⊕ U^{dim Hom(U, X)}` over the summands `U` of `V` with the
    /// evaluation map; its kernel is checked to lie in `add V`.
    Universal,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub label: String,
    pub approximation: Approximation,
    pub v0: Decomposition,
    pub v1: Decomposition,
    /// The sequence is exact and both terms lie in `add V`.
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItWitness {
    pub n: usize,
    /// Nonprojective classes of `V`; all projective classes are added.
    pub closure: Vec<usize>,
    /// Classes of the summands of `V`.
    pub classes: Vec<usize>,
    #[serde(skip)]
    pub v: Representation,
    pub checks: Vec<WitnessCheck>,
}

impl ItWitness {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.verified)
    }
}

/// Looks for `n` and `V` such that every `M` in `add(gens)` admits
/// `0 -> V_1 -> V_0 -> Ω^n M -> 0` with `V_i ∈ add V`: `V` is one
/// representative per class reachable in the syzygy orbit plus `A`.
/// `None` if the orbit does not close within `bound`.
///
/// Each generator and each sum of two generators is checked explicitly.
pub fn it_witness(t: &mut SyzygyTable, gens: &[Representation], bound: usize) -> Result<Option<ItWitness>, HomError> {
    let orbit = t.syzygy_orbit(gens, bound)?;
    let OrbitStatus::Closed { closure, .. } = orbit.status else {
        return Ok(None);
    };
    let inside: BTreeSet<usize> = closure.iter().copied().collect();
    // Least n whose classes already lie in the closure; the closure is
    // stable under Ω, so every later step does too.
    let n = orbit
        .steps
        .iter()
        .position(|s| s.iter().all(|id| inside.contains(id)))
        .expect("the closing step lies in its closure");

    let a = t.owner().clone();
    let mut classes: BTreeSet<usize> = inside.clone();
    let mut parts = Vec::new();
    for &id in &closure {
        parts.push(t.registry().class(id).representative.clone());
    }
    for v in 0..a.num_vertices() {
        let p = proj(&a, v)?;
        classes.extend(t.intern(&p)?.ids());
        parts.push(p);
    }
    let v = direct_sum(&a, &parts)?;
    let mut w = ItWitness {
        n,
        closure,
        classes: classes.into_iter().collect(),
        v,
        checks: Vec::new(),
    };

    let mut samples: Vec<(String, Representation)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("gen{i}"), g.clone()))
        .collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            samples.push((format!("gen{i}+gen{j}"), direct_sum(&a, &[gens[i].clone(), gens[j].clone()])?));
        }
    }
    for (label, m) in samples {
        let check = verify_witness_module(t, &w, &m, label)?;
        w.checks.push(check);
    }
    Ok(Some(w))
}

/// Exhibits and checks `0 -> V_1 -> V_0 -> Ω^n M -> 0` with `V_i ∈ add V`.
pub fn verify_witness_module(
    t: &mut SyzygyTable,
    w: &ItWitness,
    m: &Representation,
    label: String,
) -> Result<WitnessCheck, HomError> {
    let x = nth_syzygy(m, w.n);
    let in_v = |d: &Decomposition| d.ids().all(|id| w.classes.binary_search(&id).is_ok());
    let dx = t.intern(&x)?;
    if in_v(&dx) {
        let seq = ShortExact {
            left: Representation::zero(x.owner()),
            mid: x.clone(),
            right: x.clone(),
            inj: Hom::zero(&Representation::zero(x.owner()), &x),
            surj: Hom::identity(&x),
        };
        return Ok(WitnessCheck {
            label,
            approximation: Approximation::Identity,
            v0: dx,
            v1: Decomposition::default(),
            verified: seq.verify(),
        });
    }
    let (seq, v0) = universal_approximation(t, w, &x)?;
    let v1 = t.intern(&seq.left)?;
    let verified = seq.verify() && in_v(&v1);
    Ok(WitnessCheck {
        label,
        approximation: Approximation::Universal,
        v0,
        v1,
        verified,
    })
}

fn universal_approximation(
    t: &mut SyzygyTable,
    w: &ItWitness,
    x: &Representation,
) -> Result<(ShortExact, Decomposition), HomError> {
    let a = x.owner().clone();
    let nv = a.num_vertices();
    let mut parts = Vec::new();
    let mut ids = Vec::new();
    let mut blocks: Vec<Mat> = (0..nv).map(|v| Mat::zeros(x.dims()[v], 0)).collect();
    for &id in &w.classes {
        let u = t.registry().class(id).representative.clone();
        for h in hom_space(&u, x)? {
            for (v, b) in blocks.iter_mut().enumerate() {
                *b = b.hstack(&h.blocks[v]);
            }
            parts.push(u.clone());
            ids.push(id);
        }
    }
    let v0 = direct_sum(&a, &parts)?;
    let surj = Hom { blocks };
    let k = kernel(&surj, &v0);
    let seq = ShortExact {
        left: k.module,
        mid: v0,
        right: x.clone(),
        inj: k.map,
        surj,
    };
    Ok((seq, Decomposition::from_ids(ids)))
}
