//! Endomorphism algebras as block-diagonal matrix algebras, with an exact
//! Jacobson radical.

use rand::Rng;

use super::KsError;
use crate::linalg::{charpoly, Poly};
use crate::linalg::{dot, kernel_basis, solve, Field, Mat, Subspace};
use crate::rep::{hom_space, submodule, Hom, Representation};

/// `End_A(M)` with an echelon basis; coordinates are read off pivots.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    field: Field,
    dims: Vec<usize>,
    basis: Vec<Hom>,
    space: Subspace,
}

fn flatten(h: &Hom) -> Vec<u32> {
    h.blocks.iter().flat_map(|m| m.data().iter().copied()).collect()
}

impl EndAlgebra {
    pub fn new(m: &Representation) -> Result<Self, KsError> {
        let f = m.field();
        let dims = m.dims().to_vec();
        let ambient: usize = dims.iter().map(|d| d * d).sum();
        let homs = hom_space(m, m)?;
        let vecs: Vec<Vec<u32>> = homs.iter().map(flatten).collect();
        let space = Subspace::span(&vecs, ambient, f);
        let basis = space.vectors().iter().map(|v| unflatten(v, &dims)).collect();
        Ok(EndAlgebra {
            field: f,
            dims,
            basis,
            space,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Hom] {
        &self.basis
    }

    pub fn module_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn element(&self, coeffs: &[u32]) -> Hom {
        let f = self.field;
        let mut acc = vec![0; self.space.ambient()];
        for (c, b) in coeffs.iter().zip(self.space.vectors()) {
            crate::linalg::axpy(&mut acc, *c, &b, f);
        }
        unflatten(&acc, &self.dims)
    }

    pub fn coords(&self, h: &Hom) -> Vec<u32> {
        self.space.coords_unchecked(&flatten(h))
    }

    pub fn identity(&self) -> Hom {
        Hom {
            blocks: self.dims.iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    /// `rad End(M)` in coordinates.
    ///
    /// Iterated kernels of `x ↦ g_i(x·y)` where `g_i(z)` is the trace of
    /// `z̃^(p^i)` for an integer lift `z̃`, taken mod `p^(i+1)` and divided by
    /// `p^i`; the last kernel, at `i = ⌊log_p n⌋`, is the radical.
    pub fn radical(&self) -> Subspace {
        let f = self.field;
        let r = self.dim();
        let n = self.module_dim();
        let p = f.p() as u64;
        let mut levels = 0;
        let mut pl = p;
        while pl <= n as u64 {
            levels += 1;
            pl *= p;
        }
        // i = 0: the trace form, as dot products with transposes.
        let flat: Vec<Vec<u32>> = self.basis.iter().map(flatten).collect();
        let flat_t: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|h| flatten(&Hom {
                blocks: h.blocks.iter().map(Mat::transpose).collect(),
            }))
            .collect();
        let gram = Mat::from_rows(
            &(0..r)
                .map(|i| (0..r).map(|j| dot(&flat[i], &flat_t[j], f)).collect())
                .collect::<Vec<_>>(),
            r,
        );
        let mut current = kernel_basis(&gram.transpose(), f);
        let mut modulus = p;
        for _ in 0..levels {
            if current.rows() == 0 {
                break;
            }
            let e = modulus;
            modulus *= p;
            let rows: Vec<Vec<u32>> = (0..current.rows())
                .map(|k| {
                    let x = self.element(current.row(k));
                    self.basis
                        .iter()
                        .map(|y| lifted_trace_power(&x.compose(y, f), e, modulus, p))
                        .collect()
                })
                .collect();
            let g = Mat::from_rows(&rows, r);
            let k = kernel_basis(&g.transpose(), f);
            current = k.mul(&current, f);
        }
        Subspace::from_rows(&current, f)
    }

    /// Minimal polynomial of the image of `x` in `End/J`.
    pub fn min_poly_mod(&self, x: &Hom, j: &Subspace) -> Poly {
        let f = self.field;
        let mut powers: Vec<Vec<u32>> = Vec::new();
        let mut cur = self.identity();
        loop {
            let v = j.reduce(&self.coords(&cur), f);
            if !powers.is_empty() {
                let m = Mat::from_cols(&powers, v.len());
                if let Some(c) = solve(&m, &v, f) {
                    let mut coeffs: Vec<u32> = c.iter().map(|&a| f.neg(a)).collect();
                    coeffs.push(1);
                    return Poly::new(coeffs);
                }
            }
            powers.push(v);
            cur = cur.compose(x, f);
        }
    }

    /// Characteristic polynomial of `x` on the module.
    pub fn charpoly(&self, x: &Hom) -> Poly {
        let f = self.field;
        x.blocks
            .iter()
            .fold(Poly::one(), |acc, b| acc.mul(&charpoly(b, f), f))
    }
}

fn unflatten(v: &[u32], dims: &[usize]) -> Hom {
    let mut at = 0;
    Hom {
        blocks: dims
            .iter()
            .map(|&d| {
                let m = Mat::from_vec(d, d, v[at..at + d * d].to_vec());
                at += d * d;
                m
            })
            .collect(),
    }
}

/// `(tr(z̃^e) mod q) / (q/p)` summed over blocks; `e = q/p`.
fn lifted_trace_power(z: &Hom, e: u64, q: u64, p: u64) -> u32 {
    let mut t: u64 = 0;
    for b in &z.blocks {
        let d = b.rows();
        if d == 0 {
            continue;
        }
        let base: Vec<u64> = b.data().iter().map(|&x| x as u64).collect();
        let pw = int_mat_pow(&base, d, e, q);
        for i in 0..d {
            t = (t + pw[i * d + i]) % q;
        }
    }
    debug_assert_eq!(t % e, 0, "lifted trace not divisible on the previous ideal");
    ((t / e) % p) as u32
}

fn int_mat_mul(a: &[u64], b: &[u64], d: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k] as u128;
            if x == 0 {
                continue;
            }
            for j in 0..d {
                let y = b[k * d + j] as u128;
                out[i * d + j] = ((out[i * d + j] as u128 + x * y) % q as u128) as u64;
            }
        }
    }
    out
}

fn int_mat_pow(a: &[u64], d: usize, mut e: u64, q: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = (0..d * d).map(|i| u64::from(i % (d + 1) == 0)).collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mat_mul(&acc, &base, d, q);
        }
        e >>= 1;
        if e > 0 {
            base = int_mat_mul(&base, &base, d, q);
        }
    }
    acc
}

/// Fitting split along a proper factor of the squarefree part of the
/// characteristic polynomial of `x`; `None` when it has one irreducible
/// factor.
pub(crate) fn fitting_split<R: Rng>(
    m: &Representation,
    end: &EndAlgebra,
    x: &Hom,
    rng: &mut R,
) -> Option<(Representation, Representation)> {
    let f = m.field();
    let rad = end.charpoly(x).radical(f);
    let g = rad.proper_factor(f, rng)?;
    let mut ker = Vec::with_capacity(x.blocks.len());
    let mut im = Vec::with_capacity(x.blocks.len());
    for b in &x.blocks {
        let phi = g.eval_mat(b, f).pow(b.rows() as u64, f);
        ker.push(Subspace::kernel_of(&phi, f));
        im.push(Subspace::column_space(&phi, f));
    }
    let k = submodule(m, &ker).module;
    let i = submodule(m, &im).module;
    debug_assert!(!k.is_zero() && !i.is_zero());
    Some((k, i))
}
