//! Left modules as quiver representations.

mod hom;

pub use hom::{
    cokernel, cokernel_of_sub, factor_through_mono, hom_space, image, kernel, projective_cover,
    submodule, top_and_cover, Cover, Hom, ShortExact, Subquotient,
};

use std::sync::Arc;

use crate::algebra::{Algebra, Ideal, QuotientData};
use crate::linalg::{Field, Mat, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("modules belong to different algebras")]
    OwnerMismatch,
    #[error("arrow matrices violate the relation {0}")]
    RelationViolated(String),
    #[error("matrix for arrow {0} has the wrong shape")]
    ShapeMismatch(usize),
    #[error("module is zero")]
    ZeroModule,
    #[error("module is not annihilated by the ideal")]
    NotAnnihilated,
    #[error("map is not a module homomorphism")]
    NotHomomorphism,
}

/// A representation of the quiver of `owner` satisfying its relations.
///
/// `arrows[k]` maps the space at the source of arrow `k` to the space at
/// its target, so it has shape `dims[target] × dims[source]`.
#[derive(Clone, Debug)]
pub struct Representation {
    owner: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Mat>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner)
            && self.dims == other.dims
            && self.arrows == other.arrows
    }
}

impl Representation {
    /// Builds a representation, checking shapes and every relation.
    pub fn new(owner: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Result<Self, RepError> {
        if dims.len() != owner.num_vertices() || arrows.len() != owner.num_arrows() {
            return Err(RepError::ShapeMismatch(usize::MAX));
        }
        for (k, m) in arrows.iter().enumerate() {
            let e = owner.elem(owner.arrow(k));
            if m.rows() != dims[e.target] || m.cols() != dims[e.source] {
                return Err(RepError::ShapeMismatch(k));
            }
        }
        let r = Representation {
            owner,
            dims,
            arrows,
        };
        r.check_relations()?;
        Ok(r)
    }

    pub(crate) fn new_unchecked(owner: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>) -> Self {
        let r = Representation {
            owner,
            dims,
            arrows,
        };
        debug_assert!(r.check_relations().is_ok());
        r
    }

    pub fn zero(owner: &Arc<Algebra>) -> Self {
        let dims = vec![0; owner.num_vertices()];
        let arrows = (0..owner.num_arrows()).map(|_| Mat::zeros(0, 0)).collect();
        Representation {
            owner: owner.clone(),
            dims,
            arrows,
        }
    }

    pub fn owner(&self) -> &Arc<Algebra> {
        &self.owner
    }

    pub fn field(&self) -> Field {
        self.owner.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow(&self, k: usize) -> &Mat {
        &self.arrows[k]
    }

    pub fn arrows(&self) -> &[Mat] {
        &self.arrows
    }

    /// Start of the block of vertex `v` in the total space.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    /// Action of every basis element of the owner, as a block from the
    /// space at its source to the space at its target.
    pub fn basis_actions(&self) -> Vec<Mat> {
        let a = &self.owner;
        let f = self.field();
        let mut out: Vec<Mat> = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let e = a.elem(b);
            let m = if e.degree == 0 {
                Mat::identity(self.dims[e.source])
            } else if e.degree == 1 {
                self.arrows[b - a.arrow(0)].clone()
            } else {
                let mut m = Mat::zeros(self.dims[e.target], self.dims[e.source]);
                for &(k, c, coeff) in a.factorization(b) {
                    let prod = self.arrows[k].mul(&out[c], f);
                    m.add_scaled(&prod, coeff, f);
                }
                m
            };
            out.push(m);
        }
        out
    }

    /// `M(a)·M(c) = M(a·c)` for every arrow `a` and basis element `c`.
    fn check_relations(&self) -> Result<(), RepError> {
        let a = &self.owner;
        let f = self.field();
        let acts = self.basis_actions();
        for k in 0..a.num_arrows() {
            let ak = a.arrow(k);
            let src = a.elem(ak).source;
            for &c in a.into_vertex(src) {
                if a.elem(c).degree == 0 {
                    continue;
                }
                let lhs = self.arrows[k].mul(&acts[c], f);
                let mut rhs = Mat::zeros(lhs.rows(), lhs.cols());
                for &(b, coeff) in a.mul_basis(ak, c) {
                    rhs.add_scaled(&acts[b], coeff, f);
                }
                if lhs != rhs {
                    return Err(RepError::RelationViolated(format!(
                        "{} * {}",
                        a.elem(ak).label,
                        a.elem(c).label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action of an algebra element on the total space.
    pub fn element_action(&self, x: &[u32]) -> Mat {
        let a = &self.owner;
        let f = self.field();
        let n = self.dim();
        let acts = self.basis_actions();
        let mut out = Mat::zeros(n, n);
        for (b, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = a.elem(b);
            let mut block = Mat::zeros(n, n);
            block.put_block(self.offset(e.target), self.offset(e.source), &acts[b]);
            out.add_scaled(&block, c, f);
        }
        out
    }

    /// Arrow `k` as a map on the total space.
    pub fn full_arrow(&self, k: usize) -> Mat {
        let e = self.owner.elem(self.owner.arrow(k));
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        m.put_block(self.offset(e.target), self.offset(e.source), &self.arrows[k]);
        m
    }

    /// `rad M = (rad A)·M`, per vertex.
    pub fn radical(&self) -> Vec<Subspace> {
        let a = &self.owner;
        let f = self.field();
        (0..a.num_vertices())
            .map(|w| {
                let mut vecs = Vec::new();
                for k in 0..a.num_arrows() {
                    if a.elem(a.arrow(k)).target == w {
                        let m = &self.arrows[k];
                        for c in 0..m.cols() {
                            vecs.push(m.col(c));
                        }
                    }
                }
                Subspace::span(&vecs, self.dims[w], f)
            })
            .collect()
    }

    /// Elements killed by every arrow, per vertex.
    pub fn socle(&self) -> Vec<Subspace> {
        let a = &self.owner;
        let f = self.field();
        (0..a.num_vertices())
            .map(|v| {
                let outgoing: Vec<&Mat> = (0..a.num_arrows())
                    .filter(|&k| a.elem(a.arrow(k)).source == v)
                    .map(|k| &self.arrows[k])
                    .collect();
                let mut stacked = Mat::zeros(0, self.dims[v]);
                for m in outgoing {
                    stacked = stacked.vstack(m);
                }
                Subspace::kernel_of(&stacked, f)
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical()
            .iter()
            .zip(&self.dims)
            .map(|(r, d)| d - r.dim())
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().iter().map(Subspace::dim).collect()
    }

    /// `I·M = 0`.
    pub fn annihilated_by(&self, i: &Ideal) -> bool {
        if !Arc::ptr_eq(i.owner(), &self.owner) {
            return false;
        }
        let a = &self.owner;
        let f = self.field();
        let acts = self.basis_actions();
        i.space().vectors().iter().all(|x| {
            // x = Σ e_w x e_v; check each (w, v) block.
            let n = a.num_vertices();
            let mut blocks: Vec<Option<Mat>> = vec![None; n * n];
            for (b, &c) in x.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let e = a.elem(b);
                let slot = &mut blocks[e.target * n + e.source];
                let m = slot.get_or_insert_with(|| Mat::zeros(self.dims[e.target], self.dims[e.source]));
                m.add_scaled(&acts[b], c, f);
            }
            blocks.iter().flatten().all(Mat::is_zero)
        })
    }

    /// The submodule `I·M`, per vertex.
    pub fn ideal_times(&self, i: &Ideal) -> Vec<Subspace> {
        let a = &self.owner;
        let f = self.field();
        let n = a.num_vertices();
        let acts = self.basis_actions();
        let mut builders: Vec<crate::linalg::EchelonBuilder> =
            self.dims.iter().map(|&d| crate::linalg::EchelonBuilder::new(d)).collect();
        for x in i.space().vectors() {
            let mut blocks: Vec<Option<Mat>> = vec![None; n * n];
            for (b, &c) in x.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let e = a.elem(b);
                let slot = &mut blocks[e.target * n + e.source];
                let m = slot.get_or_insert_with(|| Mat::zeros(self.dims[e.target], self.dims[e.source]));
                m.add_scaled(&acts[b], c, f);
            }
            for (k, m) in blocks.iter().enumerate() {
                if let Some(m) = m {
                    for c in 0..m.cols() {
                        builders[k / n].insert(&m.col(c), f);
                    }
                }
            }
        }
        builders.into_iter().map(|b| b.finish(f)).collect()
    }

    /// `g_w M(a) g_v^{-1}` for invertible per-vertex matrices `g`.
    pub fn base_change(&self, g: &[Mat]) -> Representation {
        let a = &self.owner;
        let f = self.field();
        let inv: Vec<Mat> = g
            .iter()
            .map(|m| m.inverse(f).expect("base change must be invertible"))
            .collect();
        let arrows = (0..a.num_arrows())
            .map(|k| {
                let e = a.elem(a.arrow(k));
                g[e.target].mul(&self.arrows[k], f).mul(&inv[e.source], f)
            })
            .collect();
        Representation::new_unchecked(a.clone(), self.dims.clone(), arrows)
    }
}

/// The simple module at `v`.
pub fn simple(a: &Arc<Algebra>, v: usize) -> Result<Representation, RepError> {
    if v >= a.num_vertices() {
        return Err(RepError::UnknownVertex(v));
    }
    let mut dims = vec![0; a.num_vertices()];
    dims[v] = 1;
    let arrows = (0..a.num_arrows())
        .map(|k| {
            let e = a.elem(a.arrow(k));
            Mat::zeros(dims[e.target], dims[e.source])
        })
        .collect();
    Ok(Representation::new_unchecked(a.clone(), dims, arrows))
}

/// Builds the module on a family of per-vertex spaces of elements of `A`
/// that is closed under left multiplication. `spaces[w]` must lie in `e_w A`.
fn regular_submodule(a: &Arc<Algebra>, spaces: &[Subspace]) -> Representation {
    let f = a.field();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let arrows = (0..a.num_arrows())
        .map(|k| {
            let ak = a.arrow(k);
            let e = a.elem(ak);
            let (src, tgt) = (&spaces[e.source], &spaces[e.target]);
            let cols: Vec<Vec<u32>> = src
                .vectors()
                .iter()
                .map(|x| {
                    tgt.coords(&a.left_mul(ak, x), f)
                        .expect("space closed under the action")
                })
                .collect();
            Mat::from_cols(&cols, tgt.dim())
        })
        .collect();
    Representation::new_unchecked(a.clone(), dims, arrows)
}

/// The indecomposable projective `A e_v`.
pub fn proj(a: &Arc<Algebra>, v: usize) -> Result<Representation, RepError> {
    if v >= a.num_vertices() {
        return Err(RepError::UnknownVertex(v));
    }
    let f = a.field();
    let spaces: Vec<Subspace> = (0..a.num_vertices())
        .map(|w| {
            let vecs: Vec<Vec<u32>> = a
                .from_vertex(v)
                .iter()
                .filter(|&&b| a.elem(b).target == w)
                .map(|&b| a.unit_vector(b))
                .collect();
            Subspace::span(&vecs, a.dim(), f)
        })
        .collect();
    Ok(regular_submodule(a, &spaces))
}

/// The ideal `I` as a left module; the space at `w` is `e_w I`.
pub fn ideal_as_module(a: &Arc<Algebra>, i: &Ideal) -> Result<Representation, RepError> {
    if !Arc::ptr_eq(i.owner(), a) {
        return Err(RepError::OwnerMismatch);
    }
    let f = a.field();
    let basis = i.space().vectors();
    let spaces: Vec<Subspace> = (0..a.num_vertices())
        .map(|w| {
            let vecs: Vec<Vec<u32>> = basis.iter().map(|x| a.left_mul(w, x)).collect();
            Subspace::span(&vecs, a.dim(), f)
        })
        .collect();
    Ok(regular_submodule(a, &spaces))
}

/// The left module `A/I`.
pub fn quotient_as_module(a: &Arc<Algebra>, i: &Ideal) -> Result<Representation, RepError> {
    if !Arc::ptr_eq(i.owner(), a) {
        return Err(RepError::OwnerMismatch);
    }
    let f = a.field();
    let space = i.space();
    let kept = space.non_pivots();
    let at: Vec<Vec<usize>> = (0..a.num_vertices())
        .map(|w| kept.iter().copied().filter(|&b| a.elem(b).target == w).collect())
        .collect();
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let arrows = (0..a.num_arrows())
        .map(|k| {
            let ak = a.arrow(k);
            let e = a.elem(ak);
            let cols: Vec<Vec<u32>> = at[e.source]
                .iter()
                .map(|&b| {
                    let r = space.reduce(&a.left_mul(ak, &a.unit_vector(b)), f);
                    at[e.target].iter().map(|&c| r[c]).collect()
                })
                .collect();
            Mat::from_cols(&cols, dims[e.target])
        })
        .collect();
    Ok(Representation::new_unchecked(a.clone(), dims, arrows))
}

/// Regards an `A/I`-module as an `A`-module.
pub fn inflate(q: &QuotientData, m: &Representation) -> Result<Representation, RepError> {
    if !Arc::ptr_eq(m.owner(), q.quotient()) {
        return Err(RepError::OwnerMismatch);
    }
    let base = q.base();
    let b = q.quotient();
    let f = base.field();
    let mut dims = vec![0; base.num_vertices()];
    for (qv, &bv) in q.vertex_map().iter().enumerate() {
        dims[bv] = m.dims()[qv];
    }
    let arrows = (0..base.num_arrows())
        .map(|k| {
            let e = base.elem(base.arrow(k));
            let mut out = Mat::zeros(dims[e.target], dims[e.source]);
            let image = q.project(&base.unit_vector(base.arrow(k)));
            for (j, &c) in image.iter().enumerate() {
                if c != 0 {
                    let qk = b.arrow_index_of(j).expect("graded quotient");
                    out.add_scaled(m.arrow(qk), c, f);
                }
            }
            out
        })
        .collect();
    Ok(Representation::new_unchecked(base.clone(), dims, arrows))
}

/// An `A`-module killed by `I`, regarded as an `A/I`-module.
pub fn deflate(q: &QuotientData, m: &Representation) -> Result<Representation, RepError> {
    if !Arc::ptr_eq(m.owner(), q.base()) {
        return Err(RepError::OwnerMismatch);
    }
    if !m.annihilated_by(q.ideal()) {
        return Err(RepError::NotAnnihilated);
    }
    let b = q.quotient();
    let dims: Vec<usize> = q.vertex_map().iter().map(|&v| m.dims()[v]).collect();
    let arrows = (0..b.num_arrows())
        .map(|k| {
            let base_index = q.kept()[b.arrow(k)];
            let bk = q.base().arrow_index_of(base_index).expect("kept arrow");
            m.arrow(bk).clone()
        })
        .collect();
    Ok(Representation::new_unchecked(b.clone(), dims, arrows))
}

/// Block-diagonal sum; `parts[i]` occupies consecutive coordinates at each
/// vertex, in order.
pub fn direct_sum(owner: &Arc<Algebra>, parts: &[Representation]) -> Result<Representation, RepError> {
    if parts.iter().any(|p| !Arc::ptr_eq(p.owner(), owner)) {
        return Err(RepError::OwnerMismatch);
    }
    let n = owner.num_vertices();
    let dims: Vec<usize> = (0..n)
        .map(|v| parts.iter().map(|p| p.dims()[v]).sum())
        .collect();
    let arrows = (0..owner.num_arrows())
        .map(|k| {
            let e = owner.elem(owner.arrow(k));
            let mut m = Mat::zeros(dims[e.target], dims[e.source]);
            let (mut r, mut c) = (0, 0);
            for p in parts {
                m.put_block(r, c, p.arrow(k));
                r += p.dims()[e.target];
                c += p.dims()[e.source];
            }
            m
        })
        .collect();
    Ok(Representation::new_unchecked(owner.clone(), dims, arrows))
}

/// Per-vertex subspaces of `m` generated by `seeds` under the arrows.
pub fn generate(m: &Representation, seeds: &[(usize, Vec<u32>)]) -> Vec<Subspace> {
    let a = m.owner();
    let f = m.field();
    let mut builders: Vec<crate::linalg::EchelonBuilder> = m
        .dims()
        .iter()
        .map(|&d| crate::linalg::EchelonBuilder::new(d))
        .collect();
    let mut queue: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, x) in seeds {
        if builders[*v].insert(x, f) {
            queue.push((*v, x.clone()));
        }
    }
    while let Some((v, x)) = queue.pop() {
        for k in 0..a.num_arrows() {
            let e = a.elem(a.arrow(k));
            if e.source != v {
                continue;
            }
            let y = m.arrow(k).mul_vec(&x, f);
            if builders[e.target].insert(&y, f) {
                queue.push((e.target, y));
            }
        }
    }
    builders.into_iter().map(|b| b.finish(f)).collect()
}
