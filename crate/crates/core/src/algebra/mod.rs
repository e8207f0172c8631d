//! Finite-dimensional graded algebras given by a bound quiver, with ideals,
//! quotients and opposites.

mod build;
mod dynkin;
mod ideal;
mod presentation;
mod quotient;

pub use build::{build_algebra, DEGREE_CAP, DIM_BUDGET};
pub use dynkin::{separated_quiver_dynkin, DynkinType, RepFiniteCertificate};
pub use ideal::{ideal_generate, ideal_product, radical_power, Ideal, IdealGen};
pub use presentation::{Arrow, Presentation, Quiver, Relation, Term};
pub use quotient::{opposite, push_forward_ideal, quotient_algebra, QuotientData};

use crate::linalg::{axpy, Field, Mat};
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("relation {relation} mixes paths of different lengths")]
    NonHomogeneousRelation { relation: usize },
    #[error("relation {relation} has a term of length < 2")]
    NotAdmissible { relation: usize },
    #[error("relation {relation}: `{word}` is not a path")]
    NoncomposableWord { relation: usize, word: String },
    #[error("relation {relation} combines paths with different endpoints")]
    NonParallelRelation { relation: usize },
    #[error("algebra is infinite-dimensional: {reason}")]
    InfiniteDimensional { reason: String },
    #[error("graded piece of degree {degree} pushes the dimension past {budget}")]
    DimensionBudgetExceeded { degree: usize, budget: usize },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrow `{0}` references an unknown vertex")]
    UnknownVertex(String),
    #[error("objects belong to different algebras")]
    OwnerMismatch,
    #[error("ideal is not contained in the ideal being factored")]
    NotContained,
    #[error("algebra has no quiver presentation")]
    NoPresentation,
    #[error("the square of the radical is not zero")]
    RadicalSquareNotZero,
    #[error("ideal is not spanned by homogeneous elements")]
    NonGradedIdeal,
    #[error("degree {0} is not generated by arrows")]
    NotGeneratedInDegreeOne(usize),
    #[error("generator is not homogeneous of degree >= 2")]
    BadGenerator,
}

/// Sparse vector over the basis: `(index, nonzero coefficient)`, sorted.
pub type Sparse = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElem {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub label: String,
    /// Arrow indices of a path representative, when one is known.
    pub word: Option<Vec<usize>>,
}

/// A basic graded algebra `A = A_0 ⊕ ... ⊕ A_{N-1}` with a basis adapted to
/// the grading and to the vertex idempotents.
///
/// Basis element `v < num_vertices()` is the idempotent `e_v`. Degree-1
/// basis elements play the role of arrows. Products follow path
/// composition: `x·y` means `y` first, so it is nonzero only when
/// `source(x) == target(y)`.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElem>,
    degree_start: Vec<usize>,
    mult: Vec<Sparse>,
    factor: Vec<Vec<(usize, usize, u32)>>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
    presentation: Option<Presentation>,
}

impl Algebra {
    /// Assembles an algebra from a degree-sorted basis and a full table of
    /// products `mult[i * dim + j] = b_i · b_j`.
    pub(crate) fn from_parts(
        name: String,
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<Sparse>,
        presentation: Option<Presentation>,
    ) -> Result<Algebra, AlgebraError> {
        let dim = basis.len();
        debug_assert_eq!(mult.len(), dim * dim);
        let top = basis.last().map_or(0, |b| b.degree);
        let mut degree_start = vec![0usize; top + 2];
        for d in 0..=top + 1 {
            degree_start[d] = basis.iter().position(|b| b.degree >= d).unwrap_or(dim);
        }
        let n = vertices.len();
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, b) in basis.iter().enumerate() {
            by_source[b.source].push(i);
            by_target[b.target].push(i);
        }
        let mut alg = Algebra {
            name,
            field,
            vertices,
            basis,
            degree_start,
            mult,
            factor: Vec::new(),
            by_source,
            by_target,
            presentation,
        };
        alg.factor = alg.compute_factorization()?;
        Ok(alg)
    }

    /// For each basis element of positive degree, an expression
    /// `b = Σ λ · arrow · c` with `c` one degree lower.
    fn compute_factorization(&self) -> Result<Vec<Vec<(usize, usize, u32)>>, AlgebraError> {
        let f = self.field;
        let mut out = vec![Vec::new(); self.dim()];
        for d in 1..self.nilpotency_index() {
            let target = self.degree_range(d);
            let lower = self.degree_range(d - 1);
            let mut products = Vec::new();
            for k in 0..self.num_arrows() {
                let a = self.arrow(k);
                for c in lower.clone() {
                    let p = self.mul_basis(a, c);
                    if !p.is_empty() {
                        products.push(((k, c), p));
                    }
                }
            }
            let mut pending = Vec::new();
            for b in target.clone() {
                let direct = products
                    .iter()
                    .find(|(_, p)| p.len() == 1 && p[0].0 == b)
                    .map(|(kc, p)| (kc.0, kc.1, f.inv(p[0].1)));
                match direct {
                    Some(t) => out[b] = vec![t],
                    None => pending.push(b),
                }
            }
            if pending.is_empty() {
                continue;
            }
            let width = target.len();
            let cols: Vec<Vec<u32>> = products
                .iter()
                .map(|(_, p)| {
                    let mut v = vec![0; width];
                    for &(i, c) in *p {
                        v[i - target.start] = c;
                    }
                    v
                })
                .collect();
            let m = Mat::from_cols(&cols, width);
            for b in pending {
                let mut rhs = vec![0; width];
                rhs[b - target.start] = 1;
                let sol = crate::linalg::solve(&m, &rhs, f)
                    .ok_or(AlgebraError::NotGeneratedInDegreeOne(d))?;
                out[b] = sol
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (products[j].0 .0, products[j].0 .1, c))
                    .collect();
            }
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn elem(&self, i: usize) -> &BasisElem {
        &self.basis[i]
    }

    /// Smallest `N` with `rad^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.degree_start.len() - 1
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.degree_start.len() {
            return self.dim()..self.dim();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn num_arrows(&self) -> usize {
        self.degree_range(1).len()
    }

    /// Basis index of arrow `k`.
    pub fn arrow(&self, k: usize) -> usize {
        self.degree_start[1] + k
    }

    pub fn arrow_index_of(&self, basis_index: usize) -> Option<usize> {
        self.degree_range(1)
            .contains(&basis_index)
            .then(|| basis_index - self.degree_start[1])
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.degree_range(1)
            .position(|i| self.basis[i].label == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Basis elements `b` with `source(b) == v`: a basis of `A e_v`.
    pub fn from_vertex(&self, v: usize) -> &[usize] {
        &self.by_source[v]
    }

    /// Basis elements `b` with `target(b) == v`: a basis of `e_v A`.
    pub fn into_vertex(&self, v: usize) -> &[usize] {
        &self.by_target[v]
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        (0..self.nilpotency_index())
            .map(|d| self.degree_range(d).len())
            .collect()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub(crate) fn factorization(&self, b: usize) -> &[(usize, usize, u32)] {
        &self.factor[b]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i * self.dim() + j]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for x in v.iter_mut().take(self.num_vertices()) {
            *x = 1;
        }
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = f.mul(a, b);
                for &(k, m) in self.mul_basis(i, j) {
                    out[k] = f.add(out[k], f.mul(c, m));
                }
            }
        }
        out
    }

    /// Left multiplication `b_i · y`.
    pub fn left_mul(&self, i: usize, y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (j, &b) in y.iter().enumerate() {
            if b != 0 {
                for &(k, m) in self.mul_basis(i, j) {
                    out[k] = f.add(out[k], f.mul(b, m));
                }
            }
        }
        out
    }

    /// Right multiplication `y · b_i`.
    pub fn right_mul(&self, y: &[u32], i: usize) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (j, &b) in y.iter().enumerate() {
            if b != 0 {
                for &(k, m) in self.mul_basis(j, i) {
                    out[k] = f.add(out[k], f.mul(b, m));
                }
            }
        }
        out
    }

    /// The element represented by a path of arrows (leftmost applied last).
    pub fn word_element(&self, word: &[usize]) -> Vec<u32> {
        let Some(&last) = word.last() else {
            return self.one();
        };
        let mut v = self.unit_vector(self.arrow(last));
        for &k in word.iter().rev().skip(1) {
            v = self.left_mul(self.arrow(k), &v);
        }
        v
    }

    /// Element of a linear combination of words.
    pub fn relation_element(&self, r: &Relation) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for t in &r.terms {
            axpy(&mut v, t.coeff, &self.word_element(&t.word), self.field);
        }
        v
    }

    pub fn is_homogeneous(&self, v: &[u32]) -> Option<usize> {
        let mut deg = None;
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let d = self.basis[i].degree;
                if deg.is_some_and(|e| e != d) {
                    return None;
                }
                deg = Some(d);
            }
        }
        deg
    }

    pub fn describe(&self, v: &[u32]) -> String {
        let f = self.field;
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let s = f.to_signed(c);
                if s == 1 {
                    self.basis[i].label.clone()
                } else {
                    format!("{s}*{}", self.basis[i].label)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn is_monomial(&self) -> Result<bool, AlgebraError> {
        self.presentation
            .as_ref()
            .map(Presentation::is_monomial)
            .ok_or(AlgebraError::NoPresentation)
    }

    pub fn is_semisimple(&self) -> bool {
        self.nilpotency_index() <= 1
    }

    pub fn into_arc(self) -> Arc<Algebra> {
        Arc::new(self)
    }

    /// Checks associativity and unit laws against the stored table.
    pub fn check_axioms(&self) -> bool {
        let n = self.dim();
        let one = self.one();
        for i in 0..n {
            let e = self.unit_vector(i);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j).clone();
                let mut ijv = vec![0; n];
                for &(k, c) in &ij {
                    ijv[k] = c;
                }
                for k in 0..n {
                    let left = self.right_mul(&ijv, k);
                    let jk = self.left_mul(j, &self.unit_vector(k));
                    let right = self.left_mul(i, &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn to_sparse(v: &[u32]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}
