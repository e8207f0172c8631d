//! Exact sequences: horseshoes, the pullback column for a pair of ideals,
//! and spliced resolutions along a chain of ideals.

use std::sync::Arc;

use serde::Serialize;

use super::{nth_syzygy, HomError, SyzygyTable};
use crate::algebra::{ideal_product, quotient_algebra, radical_power, Ideal, QuotientData};
use crate::krull_schmidt::Decomposition;
use crate::linalg::Mat;
use crate::rep::{
    cokernel_of_sub, deflate, direct_sum, factor_through_mono, inflate, kernel, projective_cover,
    submodule, Hom, Representation, ShortExact,
};

/// `0 -> modules[0] -> modules[1] -> ... -> modules[last] -> 0`, with
/// `maps[i]: modules[i] -> modules[i+1]`.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub modules: Vec<Representation>,
    pub maps: Vec<Hom>,
}

impl From<&ShortExact> for ExactSequence {
    fn from(s: &ShortExact) -> Self {
        ExactSequence {
            modules: vec![s.left.clone(), s.mid.clone(), s.right.clone()],
            maps: vec![s.inj.clone(), s.surj.clone()],
        }
    }
}

/// Image equals kernel at every node, vertex by vertex, including the
/// zero ends.
pub fn verify_exact(seq: &ExactSequence) -> bool {
    let ms = &seq.modules;
    if ms.is_empty() || seq.maps.len() + 1 != ms.len() {
        return false;
    }
    let f = ms[0].field();
    let nv = ms[0].dims().len();
    for (i, h) in seq.maps.iter().enumerate() {
        if !h.is_homomorphism(&ms[i], &ms[i + 1]) {
            return false;
        }
        if i + 1 < seq.maps.len() && !seq.maps[i + 1].compose(h, f).is_zero() {
            return false;
        }
    }
    (0..nv).all(|v| {
        let ranks: Vec<usize> = seq.maps.iter().map(|h| h.blocks[v].rank(f)).collect();
        (0..ms.len()).all(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            let outgoing = ranks.get(k).copied().unwrap_or(0);
            ms[k].dims()[v] == incoming + outgoing
        })
    })
}

fn hstack_homs(a: &Hom, b: &Hom) -> Hom {
    Hom {
        blocks: a.blocks.iter().zip(&b.blocks).map(|(x, y)| x.hstack(y)).collect(),
    }
}

fn vstack_homs(a: &Hom, b: &Hom) -> Hom {
    Hom {
        blocks: a.blocks.iter().zip(&b.blocks).map(|(x, y)| x.vstack(y)).collect(),
    }
}

/// One horseshoe step: covers of the ends combine into a cover of the
/// middle, and the kernels form `0 -> ΩL -> K -> ΩR -> 0`.
pub fn horseshoe_step(s: &ShortExact) -> Result<ShortExact, HomError> {
    let owner = s.mid.owner();
    let f = s.mid.field();
    let cl = projective_cover(&s.left);
    let cr = projective_cover(&s.right);
    let lift = cr
        .lift_along(&s.surj, &s.mid)
        .ok_or_else(|| HomError::NotExact("right map is not surjective".into()))?;
    let p = direct_sum(owner, &[cl.projective.clone(), cr.projective.clone()])?;
    let phi = hstack_homs(&s.inj.compose(&cl.epi, f), &lift);
    let k = kernel(&phi, &p);
    let ol = kernel(&cl.epi, &cl.projective);
    let or = kernel(&cr.epi, &cr.projective);
    let zero_r = Hom::zero(&ol.module, &cr.projective);
    let into_p = vstack_homs(&ol.map, &zero_r);
    let inj = factor_through_mono(&into_p, &k.map, f)
        .ok_or_else(|| HomError::NotExact("left syzygy does not land in the kernel".into()))?;
    let to_right = Hom {
        blocks: (0..p.dims().len())
            .map(|v| {
                let (dl, dr) = (cl.projective.dims()[v], cr.projective.dims()[v]);
                Mat::zeros(dr, dl).hstack(&Mat::identity(dr))
            })
            .collect(),
    };
    let surj = factor_through_mono(&to_right.compose(&k.map, f), &or.map, f)
        .ok_or_else(|| HomError::NotExact("kernel does not map into the right syzygy".into()))?;
    let out = ShortExact {
        left: ol.module,
        mid: k.module,
        right: or.module,
        inj,
        surj,
    };
    if !out.verify() {
        return Err(HomError::NotExact("horseshoe step".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Horseshoe {
    /// `0 -> Ω^n L -> Ω^n M ⊕ P -> Ω^n R -> 0`.
    pub seq: ShortExact,
    /// The classes of `P`.
    pub projective: Decomposition,
    /// Exactness holds and the middle decomposes as `Ω^n M ⊕ P` with `P`
    /// projective.
    pub verified: bool,
}

pub fn horseshoe(s: &ShortExact, n: usize, table: &mut SyzygyTable) -> Result<Horseshoe, HomError> {
    let mut cur = s.clone();
    for _ in 0..n {
        cur = horseshoe_step(&cur)?;
    }
    let d_mid = table.intern(&cur.mid)?;
    let d_expected = table.intern(&nth_syzygy(&s.mid, n))?;
    let (projective, split) = match d_mid.checked_sub(&d_expected) {
        Some(d) => {
            let ok = d.ids().all(|id| table.registry().is_projective(id));
            (d, ok)
        }
        None => (Decomposition::default(), false),
    };
    let verified = split && cur.verify();
    Ok(Horseshoe {
        seq: cur,
        projective,
        verified,
    })
}

/// The pieces of the pullback built from a first syzygy `N = ΩM` and a
/// pair of ideals `I`, `J`.
#[derive(Clone, Debug)]
pub struct PairSequences {
    pub n: Representation,
    /// `C1 = J·N`.
    pub c1: Representation,
    /// `C2 = N / J·N`.
    pub c2: Representation,
    /// `0 -> ΩC2 -> C1 ⊕ P -> N -> 0` with `P` the cover of `C2`.
    pub column: ShortExact,
    pub hypothesis: bool,
    pub n_in_radical: bool,
    pub i_kills_c1: bool,
    pub j_kills_c2: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairChecks {
    pub hypothesis: bool,
    pub n_in_radical: bool,
    pub i_kills_c1: bool,
    pub j_kills_c2: bool,
    pub exact: bool,
}

impl PairSequences {
    pub fn checks(&self) -> PairChecks {
        PairChecks {
            hypothesis: self.hypothesis,
            n_in_radical: self.n_in_radical,
            i_kills_c1: self.i_kills_c1,
            j_kills_c2: self.j_kills_c2,
            exact: self.exact,
        }
    }
}

/// Builds `N = ΩM`, `C1 = J·N`, `C2 = N/C1` and the middle column of the
/// pullback of the cover of `C2` along `N -> C2`.
pub fn ideal_pair_sequences(m: &Representation, i: &Ideal, j: &Ideal) -> Result<PairSequences, HomError> {
    let a = m.owner();
    let f = m.field();
    let rad = radical_power(a, 1);
    let hypothesis = ideal_product(&ideal_product(i, j)?, &rad)?.is_zero();
    let cover = projective_cover(m);
    let n_in_radical = m.is_zero() || cover.is_minimal();
    let nsub = kernel(&cover.epi, &cover.projective);
    let n = nsub.module;
    let jn = n.ideal_times(j);
    let c1 = submodule(&n, &jn);
    let c2 = cokernel_of_sub(&n, &jn);
    let i_kills_c1 = c1.module.annihilated_by(i);
    let j_kills_c2 = c2.module.annihilated_by(j);

    let pc = projective_cover(&c2.module);
    let lift = pc
        .lift_along(&c2.map, &n)
        .ok_or_else(|| HomError::NotExact("N -> C2 is not surjective".into()))?;
    let mid = direct_sum(a, &[c1.module.clone(), pc.projective.clone()])?;
    let surj = hstack_homs(&c1.map, &lift);
    let om = kernel(&pc.epi, &pc.projective);
    let back = factor_through_mono(&lift.compose(&om.map, f), &c1.map, f)
        .ok_or_else(|| HomError::NotExact("lift of ΩC2 leaves C1".into()))?;
    let inj = vstack_homs(&back.scale(f.neg(1), f), &om.map);
    let column = ShortExact {
        left: om.module,
        mid,
        right: n.clone(),
        inj,
        surj,
    };
    let exact = column.verify();
    Ok(PairSequences {
        n,
        c1: c1.module,
        c2: c2.module,
        column,
        hypothesis,
        n_in_radical,
        i_kills_c1,
        j_kills_c2,
        exact,
    })
}

/// The spliced sequence `0 -> X_n -> P_{n-1} -> ... -> P_0 -> X_0 -> 0`
/// with `X_{i+1} = Ω_{A/I_i} X_i`, all regarded as `A`-modules.
#[derive(Clone, Debug)]
pub struct ChainResolution {
    pub sequence: ExactSequence,
    /// `X_0, ..., X_n` as `A`-modules.
    pub xs: Vec<Representation>,
    /// `X_{i+1}` is killed by `I_{i+1}`, for each step.
    pub annihilated: Vec<bool>,
    pub exact: bool,
}

fn inflate_hom(q: &QuotientData, h: &Hom) -> Hom {
    let n = q.base().num_vertices();
    let mut blocks = vec![Mat::zeros(0, 0); n];
    for (qv, &bv) in q.vertex_map().iter().enumerate() {
        blocks[bv] = h.blocks[qv].clone();
    }
    Hom { blocks }
}

/// Requires `chain[0] = 0`, `chain[i] ⊆ chain[i+1]` and
/// `chain[i+1]·rad A ⊆ chain[i]`. A chain of length one takes a single
/// cover step over `A`.
pub fn chain_resolution(x0: &Representation, chain: &[Ideal]) -> Result<ChainResolution, HomError> {
    let a = x0.owner();
    let f = x0.field();
    let zero = Ideal::zero(a);
    let chain: Vec<Ideal> = if chain.is_empty() { vec![zero] } else { chain.to_vec() };
    if !chain[0].is_zero() {
        return Err(HomError::ChainNotNested(0));
    }
    let rad = radical_power(a, 1);
    for i in 0..chain.len() - 1 {
        if !Arc::ptr_eq(chain[i].owner(), a) || !chain[i].is_subideal_of(&chain[i + 1]) {
            return Err(HomError::ChainNotNested(i + 1));
        }
    }
    for i in 0..chain.len() - 1 {
        if !ideal_product(&chain[i + 1], &rad)?.is_subideal_of(&chain[i]) {
            return Err(HomError::HypothesisFailed(i));
        }
    }
    let steps = (chain.len() - 1).max(1);
    let mut xs = vec![x0.clone()];
    let mut covers: Vec<Representation> = Vec::new();
    let mut epis: Vec<Hom> = Vec::new();
    let mut incls: Vec<Hom> = Vec::new();
    let mut annihilated = Vec::new();
    for i in 0..steps {
        let x = xs[i].clone();
        let (p, epi, k, incl) = if i == 0 {
            let c = projective_cover(&x);
            let k = kernel(&c.epi, &c.projective);
            (c.projective, c.epi, k.module, k.map)
        } else {
            let q = quotient_algebra(a, &chain[i])?;
            let xq = deflate(&q, &x)?;
            let c = projective_cover(&xq);
            let k = kernel(&c.epi, &c.projective);
            (
                inflate(&q, &c.projective)?,
                inflate_hom(&q, &c.epi),
                inflate(&q, &k.module)?,
                inflate_hom(&q, &k.map),
            )
        };
        let next_ideal = chain.get(i + 1).unwrap_or(&chain[0]);
        annihilated.push(k.annihilated_by(next_ideal));
        covers.push(p);
        epis.push(epi);
        incls.push(incl);
        xs.push(k);
    }
    let mut modules = vec![xs[steps].clone()];
    let mut maps = vec![incls[steps - 1].clone()];
    for i in (0..steps).rev() {
        modules.push(covers[i].clone());
        if i > 0 {
            maps.push(incls[i - 1].compose(&epis[i], f));
        }
    }
    maps.push(epis[0].clone());
    modules.push(x0.clone());
    let sequence = ExactSequence { modules, maps };
    let exact = verify_exact(&sequence);
    Ok(ChainResolution {
        sequence,
        xs,
        annihilated,
        exact,
    })
}
