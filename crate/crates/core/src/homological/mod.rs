//! Minimal syzygies, projective dimension with certificates, and syzygy
//! orbits of indecomposable classes.

mod sequences;

pub use sequences::{
    chain_resolution, horseshoe, horseshoe_step, ideal_pair_sequences, verify_exact,
    ChainResolution, ExactSequence, Horseshoe, PairChecks, PairSequences,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError};
use crate::krull_schmidt::{Decomposition, KsError, Registry};
use crate::rep::{kernel, projective_cover, RepError, Representation, ShortExact};

pub const DEFAULT_CUTOFF: usize = 64;
pub const DEFAULT_ORBIT_BOUND: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Ks(#[from] KsError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("chain is not nested at position {0}")]
    ChainNotNested(usize),
    #[error("chain step {0}: (I_{{i+1}}/I_i)·rad(A/I_i) is not zero")]
    HypothesisFailed(usize),
    #[error("constructed sequence is not exact: {0}")]
    NotExact(String),
}

/// `ΩM`, the kernel of the minimal projective cover.
pub fn syzygy(m: &Representation) -> Representation {
    syzygy_sequence(m).left
}

/// `0 -> ΩM -> P -> M -> 0` with `P` the minimal cover.
pub fn syzygy_sequence(m: &Representation) -> ShortExact {
    let c = projective_cover(m);
    let k = kernel(&c.epi, &c.projective);
    ShortExact {
        left: k.module,
        mid: c.projective,
        right: m.clone(),
        inj: k.map,
        surj: c.epi,
    }
}

pub fn nth_syzygy(m: &Representation, n: usize) -> Representation {
    (0..n).fold(m.clone(), |x, _| syzygy(&x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PdResult {
    /// `Ω^pd M` is projective and `Ω^(pd+1) M = 0`; the zero module has
    /// `pd = 0` here.
    Finite { pd: usize },
    /// `Ω^j M ≅ Ω^k M ≠ 0` with `j < k`: equal decompositions.
    InfiniteCertified { j: usize, k: usize },
    /// The classes in `cycle` each occur in `Ω` of the previous one
    /// (cyclically) and the first occurs in `Ω^step M`, so every later
    /// syzygy is nonzero.
    Recurrent { step: usize, cycle: Vec<usize> },
    Unknown { cutoff: usize, note: Option<String> },
}

impl PdResult {
    pub fn finite(&self) -> Option<usize> {
        match self {
            PdResult::Finite { pd } => Some(*pd),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PdResult::InfiniteCertified { .. } | PdResult::Recurrent { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PdReport {
    pub result: PdResult,
    /// Decomposition of `Ω^n M` for each step taken.
    pub steps: Vec<Decomposition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitStatus {
    /// Every class reached from `step` on lies in `closure`.
    Closed { step: usize, closure: Vec<usize> },
    Inconclusive { bound: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitResult {
    /// Nonprojective classes in `Ω^n` of the generators.
    pub steps: Vec<Vec<usize>>,
    pub status: OrbitStatus,
}

/// A registry with the syzygy of each class cached.
#[derive(Clone, Debug)]
pub struct SyzygyTable {
    reg: Registry,
    omega: BTreeMap<usize, Decomposition>,
}

impl SyzygyTable {
    pub fn new(owner: &Arc<Algebra>, seed: u64) -> Self {
        SyzygyTable::from_registry(Registry::new(owner, seed))
    }

    pub fn from_registry(reg: Registry) -> Self {
        SyzygyTable {
            reg,
            omega: BTreeMap::new(),
        }
    }

    pub fn registry(&self) -> &Registry {
        &self.reg
    }

    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.reg
    }

    pub fn owner(&self) -> &Arc<Algebra> {
        self.reg.owner()
    }

    pub fn intern(&mut self, m: &Representation) -> Result<Decomposition, KsError> {
        self.reg.intern(m)
    }

    /// `Ω` of a class; empty for projective classes.
    pub fn omega_of_class(&mut self, id: usize) -> Result<Decomposition, KsError> {
        if self.reg.is_projective(id) {
            return Ok(Decomposition::default());
        }
        if let Some(d) = self.omega.get(&id) {
            return Ok(d.clone());
        }
        let rep = self.reg.class(id).representative.clone();
        let d = self.reg.intern(&syzygy(&rep))?;
        self.omega.insert(id, d.clone());
        Ok(d)
    }

    pub fn known_omega(&self, id: usize) -> Option<&Decomposition> {
        self.omega.get(&id)
    }

    pub fn nonprojective(&self, d: &Decomposition) -> Decomposition {
        Decomposition {
            parts: d
                .parts
                .iter()
                .copied()
                .filter(|&(id, _)| !self.reg.is_projective(id))
                .collect(),
        }
    }

    /// `Ω` of `⊕ class^k`; `None` if a multiplicity overflows.
    pub fn omega_of(&mut self, d: &Decomposition) -> Result<Option<Decomposition>, KsError> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &(id, k) in &d.parts {
            for (j, l) in self.omega_of_class(id)?.parts {
                let Some(add) = k.checked_mul(l) else {
                    return Ok(None);
                };
                let e = counts.entry(j).or_default();
                let Some(sum) = e.checked_add(add) else {
                    return Ok(None);
                };
                *e = sum;
            }
        }
        Ok(Some(Decomposition {
            parts: counts.into_iter().collect(),
        }))
    }

    pub fn pd(&mut self, m: &Representation, cutoff: usize) -> PdReport {
        match self.intern(m) {
            Ok(d) => self.pd_of(d, cutoff),
            Err(e) => PdReport {
                result: PdResult::Unknown {
                    cutoff,
                    note: Some(e.to_string()),
                },
                steps: Vec::new(),
            },
        }
    }

    /// Projective dimension of `⊕ class^k` by iterating `Ω` on
    /// decompositions. Minimal syzygies are additive, so no module beyond
    /// the class representatives is ever built.
    pub fn pd_of(&mut self, d0: Decomposition, cutoff: usize) -> PdReport {
        let mut steps = vec![d0];
        let mut note = None;
        loop {
            let n = steps.len() - 1;
            let cur = &steps[n];
            if cur.is_empty() {
                return PdReport {
                    result: PdResult::Finite { pd: 0 },
                    steps,
                };
            }
            if let Some(j) = steps[..n].iter().position(|d| d == cur) {
                return PdReport {
                    result: PdResult::InfiniteCertified { j, k: n },
                    steps,
                };
            }
            let np = self.nonprojective(cur);
            if np.is_empty() {
                return PdReport {
                    result: PdResult::Finite { pd: n },
                    steps,
                };
            }
            if n >= cutoff {
                break;
            }
            match self.omega_of(&np) {
                Ok(Some(next)) => steps.push(next),
                Ok(None) => {
                    note = Some(format!("multiplicities overflow at step {}", n + 1));
                    break;
                }
                Err(e) => {
                    note = Some(e.to_string());
                    break;
                }
            }
        }
        let result = match self.find_cycle(&steps) {
            Some((step, cycle)) => PdResult::Recurrent { step, cycle },
            None => PdResult::Unknown { cutoff, note },
        };
        PdReport { result, steps }
    }

    /// A cycle of known `Ω` edges between nonprojective classes, reachable
    /// from the recorded steps, and the first step containing it.
    fn find_cycle(&self, steps: &[Decomposition]) -> Option<(usize, Vec<usize>)> {
        let start: Vec<usize> = steps
            .iter()
            .flat_map(|d| d.ids())
            .filter(|&id| !self.reg.is_projective(id))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let edges = |id: usize| -> Vec<usize> {
            self.omega
                .get(&id)
                .map(|d| d.ids().filter(|&j| !self.reg.is_projective(j)).collect())
                .unwrap_or_default()
        };
        // Iterative DFS with an explicit path.
        let mut state: BTreeMap<usize, u8> = BTreeMap::new();
        for &s in &start {
            if state.contains_key(&s) {
                continue;
            }
            let mut path: Vec<(usize, Vec<usize>)> = vec![(s, edges(s))];
            state.insert(s, 1);
            while let Some((node, succ)) = path.last_mut() {
                let node = *node;
                match succ.pop() {
                    Some(next) => match state.get(&next) {
                        None => {
                            state.insert(next, 1);
                            path.push((next, edges(next)));
                        }
                        Some(1) => {
                            let at = path.iter().position(|(x, _)| *x == next).unwrap();
                            let cycle: Vec<usize> = path[at..].iter().map(|(x, _)| *x).collect();
                            let step = steps
                                .iter()
                                .position(|d| cycle.iter().any(|&c| d.multiplicity(c) > 0))
                                .unwrap_or(0);
                            return Some((step, cycle));
                        }
                        Some(_) => {}
                    },
                    None => {
                        state.insert(node, 2);
                        path.pop();
                    }
                }
            }
        }
        None
    }

    /// Nonprojective classes of `Ω^n` of the generators, until no new class
    /// appears.
    pub fn syzygy_orbit(&mut self, gens: &[Representation], bound: usize) -> Result<OrbitResult, HomError> {
        let mut current: BTreeSet<usize> = BTreeSet::new();
        for g in gens {
            let d = self.intern(g)?;
            current.extend(self.nonprojective(&d).ids());
        }
        let mut seen = current.clone();
        let mut steps = vec![current.iter().copied().collect::<Vec<_>>()];
        for n in 1..=bound {
            let mut next = BTreeSet::new();
            for &id in &current {
                let d = self.omega_of_class(id)?;
                next.extend(self.nonprojective(&d).ids());
            }
            steps.push(next.iter().copied().collect());
            if next.is_subset(&seen) {
                let mut closure = next.clone();
                let mut queue: Vec<usize> = next.into_iter().collect();
                while let Some(id) = queue.pop() {
                    let d = self.omega_of_class(id)?;
                    for j in self.nonprojective(&d).ids() {
                        if closure.insert(j) {
                            queue.push(j);
                        }
                    }
                }
                return Ok(OrbitResult {
                    steps,
                    status: OrbitStatus::Closed {
                        step: n,
                        closure: closure.into_iter().collect(),
                    },
                });
            }
            seen.extend(next.iter().copied());
            current = next;
        }
        Ok(OrbitResult {
            steps,
            status: OrbitStatus::Inconclusive { bound },
        })
    }
}
