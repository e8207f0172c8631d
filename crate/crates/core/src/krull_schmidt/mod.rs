//! Krull–Schmidt decomposition, isomorphism of modules, and a registry of
//! isomorphism classes of indecomposables.

mod endo;

pub use endo::EndAlgebra;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::rep::{direct_sum, hom_space, Hom, RepError, Representation};

/// Random combinations tried after the deterministic sweeps.
pub const DEFAULT_TRIALS: usize = 256;
/// Pair sums range over the first this-many basis elements.
const PAIR_WINDOW: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KsError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("no splitting endomorphism and no field certificate for a module of dimension {dim} after {trials} trials")]
    DecompositionInconclusive { dim: usize, trials: usize },
    #[error("isomorphism test inconclusive: {0}")]
    IsoTestInconclusive(String),
    #[error("module belongs to a different algebra than the registry")]
    OwnerMismatch,
}

/// Cheap isomorphism invariants. Equal fingerprints prove nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub rad_end_dim: usize,
    /// `dim Hom(M, S_v)` per vertex.
    pub top: Vec<usize>,
    /// `dim Hom(S_v, M)` per vertex.
    pub socle: Vec<usize>,
}

/// An indecomposable summand with its local endomorphism data.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub module: Representation,
    pub end_dim: usize,
    pub rad_end_dim: usize,
}

impl Leaf {
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dims: self.module.dims().to_vec(),
            end_dim: self.end_dim,
            rad_end_dim: self.rad_end_dim,
            top: self.module.top_dims(),
            socle: self.module.socle_dims(),
        }
    }
}

enum Step {
    Split(Representation, Representation),
    Leaf(Leaf),
}

fn analyse<R: Rng>(m: &Representation, rng: &mut R, trials: usize) -> Result<Step, KsError> {
    let f = m.field();
    let end = EndAlgebra::new(m)?;
    for b in end.basis() {
        if let Some((x, y)) = endo::fitting_split(m, &end, b, rng) {
            return Ok(Step::Split(x, y));
        }
    }
    let j = end.radical();
    let r = end.dim();
    let s = r - j.dim();
    let leaf = |m: &Representation| {
        Step::Leaf(Leaf {
            module: m.clone(),
            end_dim: r,
            rad_end_dim: j.dim(),
        })
    };
    if s == 1 {
        return Ok(leaf(m));
    }
    // End/J is a field exactly when some element generates it as one.
    let is_generator = |x: &Hom| {
        let mu = end.min_poly_mod(x, &j);
        mu.degree() == Some(s) && mu.is_irreducible(f)
    };
    let pairs = (0..r.min(PAIR_WINDOW))
        .flat_map(|i| (i + 1..r.min(PAIR_WINDOW)).map(move |k| (i, k)));
    for b in end.basis() {
        if is_generator(b) {
            return Ok(leaf(m));
        }
    }
    for (i, k) in pairs {
        let x = end.basis()[i].add(&end.basis()[k], f);
        if let Some((a, b)) = endo::fitting_split(m, &end, &x, rng) {
            return Ok(Step::Split(a, b));
        }
        if is_generator(&x) {
            return Ok(leaf(m));
        }
    }
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..r).map(|_| rng.gen_range(0..f.p())).collect();
        let x = end.element(&coeffs);
        if let Some((a, b)) = endo::fitting_split(m, &end, &x, rng) {
            return Ok(Step::Split(a, b));
        }
        if is_generator(&x) {
            return Ok(leaf(m));
        }
    }
    Err(KsError::DecompositionInconclusive {
        dim: m.dim(),
        trials,
    })
}

/// Indecomposable summands of `m`, each certified to have a local
/// endomorphism ring. Their direct sum is `m` up to a change of basis.
pub fn split<R: Rng>(m: &Representation, rng: &mut R, trials: usize) -> Result<Vec<Leaf>, KsError> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match analyse(&x, rng, trials)? {
            Step::Split(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            Step::Leaf(l) => out.push(l),
        }
    }
    Ok(out)
}

/// Multiset of registry ids, sorted by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    pub parts: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for id in ids {
            *counts.entry(id).or_default() += 1;
        }
        Decomposition {
            parts: counts.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().map(|&(id, _)| id)
    }

    /// Number of summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.parts.iter().map(|&(_, k)| k).sum()
    }

    pub fn union(&self, other: &Decomposition) -> Decomposition {
        let mut counts: BTreeMap<usize, usize> = self.parts.iter().copied().collect();
        for &(id, k) in &other.parts {
            *counts.entry(id).or_default() += k;
        }
        Decomposition {
            parts: counts.into_iter().collect(),
        }
    }

    /// `self - other` as multisets, if `other ⊆ self`.
    pub fn checked_sub(&self, other: &Decomposition) -> Option<Decomposition> {
        let mut counts: BTreeMap<usize, usize> = self.parts.iter().copied().collect();
        for &(id, k) in &other.parts {
            let c = counts.get_mut(&id)?;
            *c = c.checked_sub(k)?;
        }
        Some(Decomposition {
            parts: counts.into_iter().filter(|&(_, k)| k > 0).collect(),
        })
    }

    pub fn multiplicity(&self, id: usize) -> usize {
        self.parts
            .iter()
            .find(|&&(i, _)| i == id)
            .map_or(0, |&(_, k)| k)
    }
}

#[derive(Clone, Debug)]
pub struct IndecClass {
    pub id: usize,
    pub representative: Representation,
    pub fingerprint: Fingerprint,
    /// Vertex `v` when the class is that of `P_v`.
    pub projective: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegistryEntry {
    pub id: usize,
    pub dims: Vec<usize>,
    pub fingerprint: Fingerprint,
    pub projective: Option<usize>,
}

/// Interned isomorphism classes of indecomposables over one algebra.
///
/// Ids are issued in order of first appearance and never change.
#[derive(Clone, Debug)]
pub struct Registry {
    owner: Arc<Algebra>,
    rng: ChaCha8Rng,
    trials: usize,
    classes: Vec<IndecClass>,
    buckets: BTreeMap<Fingerprint, Vec<usize>>,
}

impl Registry {
    pub fn new(owner: &Arc<Algebra>, seed: u64) -> Self {
        Registry {
            owner: owner.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            trials: DEFAULT_TRIALS,
            classes: Vec::new(),
            buckets: BTreeMap::new(),
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn owner(&self) -> &Arc<Algebra> {
        &self.owner
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: usize) -> &IndecClass {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[IndecClass] {
        &self.classes
    }

    pub fn is_projective(&self, id: usize) -> bool {
        self.classes[id].projective.is_some()
    }

    pub fn dump(&self) -> Vec<RegistryEntry> {
        self.classes
            .iter()
            .map(|c| RegistryEntry {
                id: c.id,
                dims: c.representative.dims().to_vec(),
                fingerprint: c.fingerprint.clone(),
                projective: c.projective,
            })
            .collect()
    }

    /// Decomposes `m` and maps each summand to its class, creating classes
    /// as needed.
    pub fn intern(&mut self, m: &Representation) -> Result<Decomposition, KsError> {
        if !Arc::ptr_eq(m.owner(), &self.owner) {
            return Err(KsError::OwnerMismatch);
        }
        let leaves = split(m, &mut self.rng, self.trials)?;
        let mut ids = Vec::with_capacity(leaves.len());
        for leaf in leaves {
            ids.push(self.intern_leaf(leaf)?);
        }
        Ok(Decomposition::from_ids(ids))
    }

    fn intern_leaf(&mut self, leaf: Leaf) -> Result<usize, KsError> {
        let fp = leaf.fingerprint();
        if let Some(bucket) = self.buckets.get(&fp) {
            for &id in bucket {
                if indecomposables_isomorphic(&leaf.module, &self.classes[id].representative)? {
                    return Ok(id);
                }
            }
        }
        let id = self.classes.len();
        let projective = projective_vertex(&leaf.module);
        self.classes.push(IndecClass {
            id,
            representative: leaf.module,
            fingerprint: fp.clone(),
            projective,
        });
        self.buckets.entry(fp).or_default().push(id);
        Ok(id)
    }

    /// `⊕ representative^multiplicity`.
    pub fn realise(&self, d: &Decomposition) -> Result<Representation, KsError> {
        let mut parts = Vec::new();
        for &(id, k) in &d.parts {
            for _ in 0..k {
                parts.push(self.classes[id].representative.clone());
            }
        }
        Ok(direct_sum(&self.owner, &parts)?)
    }

    pub fn total_dim(&self, d: &Decomposition) -> usize {
        d.parts
            .iter()
            .map(|&(id, k)| k * self.classes[id].representative.dim())
            .sum()
    }
}

/// Decomposition of `m` against a fresh registry.
pub fn decompose(m: &Representation, seed: u64) -> Result<(Decomposition, Registry), KsError> {
    let mut reg = Registry::new(m.owner(), seed);
    let d = reg.intern(m)?;
    Ok((d, reg))
}

/// For an indecomposable `m`: the vertex `v` with `m ≅ P_v`.
fn projective_vertex(m: &Representation) -> Option<usize> {
    let top = m.top_dims();
    if top.iter().sum::<usize>() != 1 {
        return None;
    }
    let v = top.iter().position(|&t| t == 1)?;
    (m.dim() == m.owner().from_vertex(v).len()).then_some(v)
}

fn is_invertible(h: &Hom, f: crate::linalg::Field) -> bool {
    h.blocks
        .iter()
        .all(|b| b.rows() == b.cols() && b.rank(f) == b.rows())
}

/// Exact for indecomposables: `m ≅ n` iff some `g∘f` with `f` and `g`
/// from basis of `Hom(m,n)` and `Hom(n,m)` is invertible, since
/// `End(m)` is local and these products span `Hom(n,m)∘Hom(m,n)`.
pub fn indecomposables_isomorphic(m: &Representation, n: &Representation) -> Result<bool, KsError> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let f = m.field();
    let mn = hom_space(m, n)?;
    if mn.is_empty() {
        return Ok(m.is_zero() && n.is_zero());
    }
    let nm = hom_space(n, m)?;
    for a in &mn {
        for b in &nm {
            if is_invertible(&b.compose(a, f), f) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `m ≅ n`. Positives come from an invertible map found by search;
/// negatives from comparing Krull–Schmidt decompositions, so both are exact.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<bool, KsError> {
    if !Arc::ptr_eq(m.owner(), n.owner()) {
        return Err(KsError::OwnerMismatch);
    }
    if m.dims() != n.dims() || m.top_dims() != n.top_dims() || m.socle_dims() != n.socle_dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let f = m.field();
    let mn = hom_space(m, n)?;
    if mn.len() != hom_space(m, m)?.len() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = mn.len().min(PAIR_WINDOW);
    let mut candidates: Vec<Hom> = mn.clone();
    for i in 0..window {
        for k in i + 1..window {
            candidates.push(mn[i].add(&mn[k], f));
        }
    }
    for h in &candidates {
        if is_invertible(h, f) {
            return Ok(true);
        }
    }
    for _ in 0..DEFAULT_TRIALS {
        let mut h = Hom::zero(m, n);
        for b in &mn {
            h = h.add(&b.scale(rng.gen_range(0..f.p()), f), f);
        }
        if is_invertible(&h, f) {
            return Ok(true);
        }
    }
    let mut reg = Registry::new(m.owner(), seed);
    let dm = reg
        .intern(m)
        .map_err(|e| KsError::IsoTestInconclusive(e.to_string()))?;
    let dn = reg
        .intern(n)
        .map_err(|e| KsError::IsoTestInconclusive(e.to_string()))?;
    Ok(dm == dn)
}
