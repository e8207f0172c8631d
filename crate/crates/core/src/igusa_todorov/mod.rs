//! The free abelian group on nonprojective indecomposable classes, the
//! induced syzygy endomorphism, the Igusa–Todorov functions φ and Ψ, and
//! witnesses for the Igusa–Todorov property of a class of modules.

mod witness;

pub use witness::{it_witness, verify_witness_module, Approximation, ItWitness, WitnessCheck};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::homological::{HomError, PdResult, SyzygyTable};
use crate::krull_schmidt::{Decomposition, KsError};
use crate::rep::Representation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ItError {
    #[error(transparent)]
    Ks(#[from] KsError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("pd of class {class} is unknown at cutoff {cutoff}; psi refuses to bound it")]
    PsiInconclusive { class: usize, cutoff: usize },
    #[error("summand multiplicities overflow at syzygy step {0}")]
    Overflow(usize),
}

/// A sparse integer vector over registry ids. Projective classes never
/// appear and zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KElem {
    coeffs: BTreeMap<usize, BigInt>,
}

impl KElem {
    pub fn zero() -> Self {
        KElem::default()
    }

    /// `[X]` for a nonprojective class; zero for a projective one.
    pub fn class(t: &SyzygyTable, id: usize) -> Self {
        let mut x = KElem::zero();
        if !t.registry().is_projective(id) {
            x.coeffs.insert(id, BigInt::one());
        }
        x
    }

    /// `Σ k [X]` over the nonprojective parts of `d`.
    pub fn from_decomposition(t: &SyzygyTable, d: &Decomposition) -> Self {
        let mut x = KElem::zero();
        for &(id, k) in &t.nonprojective(d).parts {
            x.add_term(id, &BigInt::from(k));
        }
        x
    }

    /// From raw coordinates; the ids must name nonprojective classes.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut x = KElem::zero();
        for (id, c) in terms {
            x.add_term(id, &c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, id: usize) -> BigInt {
        self.coeffs.get(&id).cloned().unwrap_or_default()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&id, c)| (id, c))
    }

    fn add_term(&mut self, id: usize, c: &BigInt) {
        let e = self.coeffs.entry(id).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&id);
        }
    }

    pub fn add(&self, other: &KElem) -> KElem {
        let mut out = self.clone();
        for (id, c) in other.terms() {
            out.add_term(id, c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> KElem {
        if c.is_zero() {
            return KElem::zero();
        }
        KElem {
            coeffs: self.coeffs.iter().map(|(&id, x)| (id, x * c)).collect(),
        }
    }
}

/// `Ω̄`: each class goes to the sum of the nonprojective summands of its
/// syzygy, with multiplicity.
pub fn omega_bar(t: &mut SyzygyTable, x: &KElem) -> Result<KElem, KsError> {
    let mut out = KElem::zero();
    for (id, c) in x.terms() {
        let d = t.omega_of_class(id)?;
        for &(j, l) in &t.nonprojective(&d).parts {
            out.add_term(j, &(c * BigInt::from(l)));
        }
    }
    Ok(out)
}

/// Rank over ℚ by fraction-free elimination.
pub fn integer_rank(vectors: &[KElem]) -> usize {
    let cols: Vec<usize> = vectors
        .iter()
        .flat_map(|v| v.ids())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| cols.iter().map(|&c| v.coeff(c)).collect())
        .collect();
    let (m, n) = (rows.len(), cols.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (rank..m).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        for r in rank + 1..m {
            let lead = rows[r][c].clone();
            for k in c..n {
                // Bareiss: the division is exact.
                let v = (&piv * &rows[r][k] - &lead * &rows[rank][k]) / &prev;
                rows[r][k] = v;
            }
        }
        prev = piv;
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiTrace {
    pub phi: usize,
    /// `rank G_n` for `n = 0, 1, ...`; weakly decreasing.
    pub ranks: Vec<usize>,
    /// The classes reachable from `G_0` were exhausted, so the ranks are
    /// known to be constant from `phi` on. Otherwise the trace ran to the
    /// bound and `phi` is where it last changed.
    pub certified: bool,
    /// Number of classes reachable from `G_0`, when finite.
    pub reachable: Option<usize>,
}

/// `G_0` = the subgroup spanned by the nonprojective summand classes of
/// `m`, `G_n = Ω̄ G_{n-1}`; φ is the least `n` after which the rank of
/// `G_n` never changes.
pub fn phi_trace(t: &mut SyzygyTable, m: &Representation, bound: usize) -> Result<PhiTrace, KsError> {
    let d = t.intern(m)?;
    phi_of(t, &d, bound)
}

pub fn phi(t: &mut SyzygyTable, m: &Representation, bound: usize) -> Result<usize, KsError> {
    Ok(phi_trace(t, m, bound)?.phi)
}

pub fn phi_of(t: &mut SyzygyTable, d: &Decomposition, bound: usize) -> Result<PhiTrace, KsError> {
    let gens: Vec<usize> = t.nonprojective(d).ids().collect();
    // Ω̄ restricted to the span W of reachable classes: by Fitting, the
    // rank of Ω̄^n on any subgroup of W is constant for n ≥ dim W.
    let mut reach: BTreeSet<usize> = gens.iter().copied().collect();
    let mut frontier: Vec<usize> = gens.clone();
    let mut layers = 0;
    while !frontier.is_empty() && layers < bound {
        let mut next = Vec::new();
        for id in frontier {
            let od = t.omega_of_class(id)?;
            for j in t.nonprojective(&od).ids() {
                if reach.insert(j) {
                    next.push(j);
                }
            }
        }
        frontier = next;
        layers += 1;
    }
    let closed = frontier.is_empty();
    let steps = if closed { reach.len() } else { bound };
    let mut g: Vec<KElem> = gens.iter().map(|&id| KElem::class(t, id)).collect();
    let mut ranks = vec![integer_rank(&g)];
    for _ in 0..steps {
        if ranks.last() == Some(&0) {
            break;
        }
        g = g
            .iter()
            .map(|x| omega_bar(t, x))
            .collect::<Result<Vec<_>, _>>()?;
        ranks.push(integer_rank(&g));
    }
    let last = *ranks.last().unwrap();
    let phi = ranks.iter().position(|&r| r == last).unwrap();
    Ok(PhiTrace {
        phi,
        ranks,
        certified: closed || last == 0,
        reachable: closed.then_some(reach.len()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSummand {
    pub class: usize,
    pub pd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiResult {
    pub phi: usize,
    pub psi: usize,
    pub trace: PhiTrace,
    /// Indecomposable summands of `Ω^φ M` of finite projective dimension.
    pub finite_summands: Vec<FiniteSummand>,
}

/// `Ψ(M) = φ(M) + max pd Z` over the indecomposable summands `Z` of
/// `Ω^φ M` with finite pd (0 if there are none).
pub fn psi(t: &mut SyzygyTable, m: &Representation, cutoff: usize, bound: usize) -> Result<PsiResult, ItError> {
    let d = t.intern(m)?;
    psi_of(t, &d, cutoff, bound)
}

pub fn psi_of(t: &mut SyzygyTable, d: &Decomposition, cutoff: usize, bound: usize) -> Result<PsiResult, ItError> {
    let trace = phi_of(t, d, bound)?;
    let mut cur = d.clone();
    for step in 1..=trace.phi {
        let np = t.nonprojective(&cur);
        cur = t.omega_of(&np)?.ok_or(ItError::Overflow(step))?;
    }
    let mut finite_summands = Vec::new();
    for id in cur.ids() {
        match t.pd_of(Decomposition::from_ids([id]), cutoff).result {
            PdResult::Finite { pd } => finite_summands.push(FiniteSummand { class: id, pd }),
            PdResult::Unknown { .. } => return Err(ItError::PsiInconclusive { class: id, cutoff }),
            PdResult::InfiniteCertified { .. } | PdResult::Recurrent { .. } => {}
        }
    }
    let top = finite_summands.iter().map(|s| s.pd).max().unwrap_or(0);
    Ok(PsiResult {
        phi: trace.phi,
        psi: trace.phi + top,
        trace,
        finite_summands,
    })
}
