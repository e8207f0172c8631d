use std::sync::Arc;

use super::{proj, RepError, Representation};
use crate::linalg::{kernel_basis, solve, solve_many, EchelonBuilder, Field, Mat, Subspace};

/// A module map, one block per vertex: `blocks[v]` has shape
/// `target.dims[v] × source.dims[v]`. Source and target are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub blocks: Vec<Mat>,
}

impl Hom {
    pub fn zero(src: &Representation, tgt: &Representation) -> Hom {
        Hom {
            blocks: src
                .dims()
                .iter()
                .zip(tgt.dims())
                .map(|(&s, &t)| Mat::zeros(t, s))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Hom {
        Hom {
            blocks: m.dims().iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Hom, f: Field) -> Hom {
        Hom {
            blocks: self
                .blocks
                .iter()
                .zip(&first.blocks)
                .map(|(g, h)| g.mul(h, f))
                .collect(),
        }
    }

    pub fn add(&self, other: &Hom, f: Field) -> Hom {
        Hom {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b, f))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, f: Field) -> Hom {
        Hom {
            blocks: self.blocks.iter().map(|m| m.scale(c, f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// `F_w M(a) = N(a) F_v` for every arrow `a: v -> w`.
    pub fn is_homomorphism(&self, src: &Representation, tgt: &Representation) -> bool {
        let a = src.owner();
        let f = src.field();
        if self.blocks.len() != a.num_vertices() {
            return false;
        }
        for (v, m) in self.blocks.iter().enumerate() {
            if m.rows() != tgt.dims()[v] || m.cols() != src.dims()[v] {
                return false;
            }
        }
        (0..a.num_arrows()).all(|k| {
            let e = a.elem(a.arrow(k));
            self.blocks[e.target].mul(src.arrow(k), f) == tgt.arrow(k).mul(&self.blocks[e.source], f)
        })
    }

    pub fn rank(&self, f: Field) -> usize {
        self.blocks.iter().map(|m| m.rank(f)).sum()
    }

    pub fn is_injective(&self, f: Field) -> bool {
        self.blocks.iter().all(|m| m.rank(f) == m.cols())
    }

    pub fn is_surjective(&self, f: Field) -> bool {
        self.blocks.iter().all(|m| m.rank(f) == m.rows())
    }

    /// The map on total spaces.
    pub fn full(&self, src: &Representation, tgt: &Representation) -> Mat {
        let mut m = Mat::zeros(tgt.dim(), src.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            m.put_block(tgt.offset(v), src.offset(v), b);
        }
        m
    }

    /// Vertex blocks of a map given on total spaces.
    pub fn from_full(m: &Mat, src: &Representation, tgt: &Representation) -> Hom {
        Hom {
            blocks: (0..src.dims().len())
                .map(|v| m.block(tgt.offset(v), src.offset(v), tgt.dims()[v], src.dims()[v]))
                .collect(),
        }
    }
}

/// `0 -> left -> mid -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: Representation,
    pub mid: Representation,
    pub right: Representation,
    pub inj: Hom,
    pub surj: Hom,
}

impl ShortExact {
    /// Both maps are homomorphisms, `inj` is injective, `surj` surjective
    /// and `im inj = ker surj` at every vertex.
    pub fn verify(&self) -> bool {
        let f = self.mid.field();
        if !self.inj.is_homomorphism(&self.left, &self.mid)
            || !self.surj.is_homomorphism(&self.mid, &self.right)
            || !self.inj.is_injective(f)
            || !self.surj.is_surjective(f)
        {
            return false;
        }
        self.surj.compose(&self.inj, f).is_zero()
            && (0..self.mid.dims().len()).all(|v| {
                self.left.dims()[v] + self.right.dims()[v] == self.mid.dims()[v]
            })
    }
}

/// A submodule with its inclusion, or a quotient with its projection.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: Representation,
    pub map: Hom,
}

/// The submodule on per-vertex subspaces closed under the arrows.
pub fn submodule(m: &Representation, spaces: &[Subspace]) -> Subquotient {
    let a = m.owner();
    let f = m.field();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let arrows = (0..a.num_arrows())
        .map(|k| {
            let e = a.elem(a.arrow(k));
            let cols: Vec<Vec<u32>> = spaces[e.source]
                .vectors()
                .iter()
                .map(|x| {
                    spaces[e.target]
                        .coords(&m.arrow(k).mul_vec(x, f), f)
                        .expect("subspaces closed under the arrows")
                })
                .collect();
            Mat::from_cols(&cols, dims[e.target])
        })
        .collect();
    let map = Hom {
        blocks: spaces.iter().map(|s| s.basis().transpose()).collect(),
    };
    Subquotient {
        module: Representation::new_unchecked(a.clone(), dims, arrows),
        map,
    }
}

/// `m / sub` with the projection; the quotient basis is the set of
/// non-pivot coordinates of each subspace.
pub fn cokernel_of_sub(m: &Representation, spaces: &[Subspace]) -> Subquotient {
    let a = m.owner();
    let f = m.field();
    let keep: Vec<Vec<usize>> = spaces.iter().map(Subspace::non_pivots).collect();
    let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
    let project = |v: usize, x: &[u32]| -> Vec<u32> {
        let r = spaces[v].reduce(x, f);
        keep[v].iter().map(|&c| r[c]).collect()
    };
    let unit = |d: usize, i: usize| {
        let mut x = vec![0; d];
        x[i] = 1;
        x
    };
    let arrows = (0..a.num_arrows())
        .map(|k| {
            let e = a.elem(a.arrow(k));
            let cols: Vec<Vec<u32>> = keep[e.source]
                .iter()
                .map(|&c| project(e.target, &m.arrow(k).col(c)))
                .collect();
            Mat::from_cols(&cols, dims[e.target])
        })
        .collect();
    let map = Hom {
        blocks: (0..m.dims().len())
            .map(|v| {
                let d = m.dims()[v];
                let cols: Vec<Vec<u32>> = (0..d).map(|i| project(v, &unit(d, i))).collect();
                Mat::from_cols(&cols, dims[v])
            })
            .collect(),
    };
    Subquotient {
        module: Representation::new_unchecked(a.clone(), dims, arrows),
        map,
    }
}

pub fn kernel(h: &Hom, src: &Representation) -> Subquotient {
    let f = src.field();
    let spaces: Vec<Subspace> = h.blocks.iter().map(|m| Subspace::kernel_of(m, f)).collect();
    submodule(src, &spaces)
}

pub fn image(h: &Hom, tgt: &Representation) -> Vec<Subspace> {
    let f = tgt.field();
    h.blocks
        .iter()
        .map(|m| Subspace::column_space(m, f))
        .zip(tgt.dims())
        .map(|(s, &d)| if s.ambient() == d { s } else { Subspace::zero(d) })
        .collect()
}

pub fn cokernel(h: &Hom, tgt: &Representation) -> Subquotient {
    cokernel_of_sub(tgt, &image(h, tgt))
}

/// A projective cover `P -> M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub projective: Representation,
    pub epi: Hom,
    /// Vertex of each indecomposable summand of `P`, in order.
    pub tops: Vec<usize>,
    /// Image in `M` of the top generator of each summand.
    pub generators: Vec<Vec<u32>>,
    /// For each vertex `w`, the `(summand, algebra basis element)` behind
    /// each coordinate of `P_w`.
    pub coords: Vec<Vec<(usize, usize)>>,
}

impl Cover {
    /// `ker epi ⊆ rad P`.
    pub fn is_minimal(&self) -> bool {
        let f = self.projective.field();
        let a = self.projective.owner();
        self.epi.blocks.iter().enumerate().all(|(w, m)| {
            let k = kernel_basis(m, f);
            (0..k.rows()).all(|r| {
                self.coords[w]
                    .iter()
                    .enumerate()
                    .all(|(j, &(_, b))| a.elem(b).degree > 0 || k.get(r, j) == 0)
            })
        })
    }
}

impl Cover {
    /// The map `P -> N` sending top generator `i` to `images[i]`, which
    /// must lie at vertex `tops[i]` of `n`.
    pub fn map_to(&self, n: &Representation, images: &[Vec<u32>]) -> Hom {
        let f = n.field();
        let acts = n.basis_actions();
        let blocks = self
            .coords
            .iter()
            .enumerate()
            .map(|(w, cs)| {
                let cols: Vec<Vec<u32>> = cs.iter().map(|&(i, b)| acts[b].mul_vec(&images[i], f)).collect();
                Mat::from_cols(&cols, n.dims()[w])
            })
            .collect();
        Hom { blocks }
    }

    /// A lift `P -> mid` of `epi` along a surjection `surj: mid -> M`.
    pub fn lift_along(&self, surj: &Hom, mid: &Representation) -> Option<Hom> {
        let f = mid.field();
        let images = self
            .tops
            .iter()
            .zip(&self.generators)
            .map(|(&v, g)| solve(&surj.blocks[v], g, f))
            .collect::<Option<Vec<_>>>()?;
        Some(self.map_to(mid, &images))
    }
}

/// `g` with `mono ∘ g = h`, when `h` factors through the injective `mono`.
pub fn factor_through_mono(h: &Hom, mono: &Hom, f: Field) -> Option<Hom> {
    let blocks = h
        .blocks
        .iter()
        .zip(&mono.blocks)
        .map(|(hv, mv)| {
            if hv.cols() == 0 || mv.cols() == 0 {
                return hv.is_zero().then(|| Mat::zeros(mv.cols(), hv.cols()));
            }
            solve_many(mv, hv, f)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Hom { blocks })
}

/// Minimal projective cover; the zero module has the zero cover.
pub fn projective_cover(m: &Representation) -> Cover {
    if m.is_zero() {
        let n = m.dims().len();
        return Cover {
            projective: m.clone(),
            epi: Hom::zero(m, m),
            tops: Vec::new(),
            generators: Vec::new(),
            coords: vec![Vec::new(); n],
        };
    }
    top_and_cover(m).expect("nonzero module has a cover")
}

/// `rad M` from the arrows; top generators are the standard complement
/// of `rad M` at each vertex.
pub fn top_and_cover(m: &Representation) -> Result<Cover, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    let a = m.owner();
    let f = m.field();
    let rad = m.radical();
    let mut tops = Vec::new();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for c in r.non_pivots() {
            let mut g = vec![0; m.dims()[v]];
            g[c] = 1;
            tops.push(v);
            generators.push(g);
        }
    }
    let parts: Vec<Representation> = tops.iter().map(|&v| proj(a, v)).collect::<Result<_, _>>()?;
    let projective = super::direct_sum(a, &parts)?;
    let acts = m.basis_actions();
    let n = a.num_vertices();
    let mut coords = vec![Vec::new(); n];
    for (i, &v) in tops.iter().enumerate() {
        for &b in a.from_vertex(v) {
            coords[a.elem(b).target].push((i, b));
        }
    }
    let blocks = (0..n)
        .map(|w| {
            let cols: Vec<Vec<u32>> = coords[w]
                .iter()
                .map(|&(i, b)| acts[b].mul_vec(&generators[i], f))
                .collect();
            Mat::from_cols(&cols, m.dims()[w])
        })
        .collect();
    Ok(Cover {
        projective,
        epi: Hom { blocks },
        tops,
        generators,
        coords,
    })
}

/// A basis of `Hom_A(M, N)`.
///
/// A map is fixed by the images `n_i ∈ N_{v_i}` of the top generators of
/// `M`; these must kill the generators of the kernel of the cover.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Hom>, RepError> {
    if !Arc::ptr_eq(m.owner(), n.owner()) {
        return Err(RepError::OwnerMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    let a = m.owner();
    let f = m.field();
    let nv = a.num_vertices();
    let cover = top_and_cover(m)?;
    let p = &cover.projective;
    let acts = n.basis_actions();
    let mut uo = Vec::with_capacity(cover.tops.len() + 1);
    uo.push(0);
    for &v in &cover.tops {
        uo.push(uo.last().unwrap() + n.dims()[v]);
    }
    let unknowns = *uo.last().unwrap();
    if unknowns == 0 {
        return Ok(Vec::new());
    }

    // Generators of ker(P -> M): kernel vectors outside rad(ker).
    let ker: Vec<Subspace> = cover
        .epi
        .blocks
        .iter()
        .map(|b| Subspace::kernel_of(b, f))
        .collect();
    let mut builders: Vec<EchelonBuilder> = (0..nv).map(|w| EchelonBuilder::new(p.dims()[w])).collect();
    for k in 0..a.num_arrows() {
        let e = a.elem(a.arrow(k));
        for x in ker[e.source].vectors() {
            builders[e.target].insert(&p.arrow(k).mul_vec(&x, f), f);
        }
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for w in 0..nv {
        for x in ker[w].vectors() {
            if !builders[w].insert(&x, f) {
                continue;
            }
            let mut block = vec![vec![0u32; unknowns]; n.dims()[w]];
            for (j, &c) in x.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (i, b) = cover.coords[w][j];
                let act = &acts[b];
                for (r, row) in block.iter_mut().enumerate() {
                    for s in 0..act.cols() {
                        let t = f.mul(c, act.get(r, s));
                        row[uo[i] + s] = f.add(row[uo[i] + s], t);
                    }
                }
            }
            rows.extend(block);
        }
    }
    let solutions = if rows.is_empty() {
        Mat::identity(unknowns)
    } else {
        kernel_basis(&Mat::from_rows(&rows, unknowns), f)
    };

    let sections: Vec<Mat> = (0..nv)
        .map(|w| {
            solve_many(&cover.epi.blocks[w], &Mat::identity(m.dims()[w]), f)
                .expect("cover is surjective")
        })
        .collect();
    let homs = (0..solutions.rows())
        .map(|s| {
            let u = solutions.row(s);
            let blocks = (0..nv)
                .map(|w| {
                    let cols: Vec<Vec<u32>> = cover.coords[w]
                        .iter()
                        .map(|&(i, b)| acts[b].mul_vec(&u[uo[i]..uo[i + 1]], f))
                        .collect();
                    Mat::from_cols(&cols, n.dims()[w]).mul(&sections[w], f)
                })
                .collect();
            Hom { blocks }
        })
        .collect();
    Ok(homs)
}
