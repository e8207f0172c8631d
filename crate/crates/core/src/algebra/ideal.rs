use std::sync::Arc;

use super::{Algebra, AlgebraError};
use crate::linalg::{EchelonBuilder, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealGen {
    Vertex(usize),
    Arrow(usize),
    /// Homogeneous element of degree >= 2, dense over the basis.
    Element(Vec<u32>),
    RadPower(usize),
}

/// A two-sided ideal, stored as the RREF of its underlying subspace.
#[derive(Clone, Debug)]
pub struct Ideal {
    owner: Arc<Algebra>,
    space: Subspace,
    generators: Option<Vec<IdealGen>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner) && self.space == other.space
    }
}

impl Ideal {
    /// Wraps a subspace already known to be a two-sided ideal.
    pub(crate) fn from_space(owner: Arc<Algebra>, space: Subspace, gens: Option<Vec<IdealGen>>) -> Ideal {
        Ideal {
            owner,
            space,
            generators: gens,
        }
    }

    pub fn zero(a: &Arc<Algebra>) -> Ideal {
        Ideal::from_space(a.clone(), Subspace::zero(a.dim()), Some(Vec::new()))
    }

    pub fn unit(a: &Arc<Algebra>) -> Ideal {
        Ideal::from_space(a.clone(), Subspace::full(a.dim()), None)
    }

    pub fn owner(&self) -> &Arc<Algebra> {
        &self.owner
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn generators(&self) -> Option<&[IdealGen]> {
        self.generators.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v, self.owner.field())
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner)
            && self.space.is_subspace_of(&other.space, self.owner.field())
    }

    /// True when the ideal is spanned by homogeneous elements.
    pub fn is_graded(&self) -> bool {
        let a = &self.owner;
        let f = a.field();
        let mut total = 0;
        for d in 0..a.nilpotency_index() {
            let r = a.degree_range(d);
            let piece: Vec<Vec<u32>> = self
                .space
                .vectors()
                .into_iter()
                .map(|mut v| {
                    for (i, x) in v.iter_mut().enumerate() {
                        if !r.contains(&i) {
                            *x = 0;
                        }
                    }
                    v
                })
                .collect();
            let s = Subspace::span(&piece, a.dim(), f);
            if !s.is_subspace_of(&self.space, f) {
                return false;
            }
            total += s.dim();
        }
        total == self.dim()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        if !Arc::ptr_eq(&self.owner, &other.owner) {
            return Err(AlgebraError::OwnerMismatch);
        }
        let gens = match (&self.generators, &other.generators) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(Ideal::from_space(
            self.owner.clone(),
            self.space.sum(&other.space, self.owner.field()),
            gens,
        ))
    }

    /// `I · rad A == 0` and `rad A · I == 0`.
    pub fn annihilated_by_radical(&self) -> bool {
        let a = &self.owner;
        let rad = radical_power(a, 1);
        ideal_product(self, &rad).is_ok_and(|p| p.is_zero())
            && ideal_product(&rad, self).is_ok_and(|p| p.is_zero())
    }

    pub fn describe(&self) -> String {
        let a = &self.owner;
        match &self.generators {
            Some(g) if !g.is_empty() => {
                let parts: Vec<String> = g
                    .iter()
                    .map(|x| match x {
                        IdealGen::Vertex(v) => format!("e_{}", a.vertex_names()[*v]),
                        IdealGen::Arrow(k) => a.elem(a.arrow(*k)).label.clone(),
                        IdealGen::Element(v) => a.describe(v),
                        IdealGen::RadPower(n) => format!("rad^{n}"),
                    })
                    .collect();
                format!("({})", parts.join(", "))
            }
            _ => format!("<ideal of dim {}>", self.dim()),
        }
    }
}

/// The two-sided ideal generated by `gens`.
pub fn ideal_generate(a: &Arc<Algebra>, gens: &[IdealGen]) -> Result<Ideal, AlgebraError> {
    let f = a.field();
    let mut seeds = Vec::new();
    for g in gens {
        match g {
            IdealGen::Vertex(v) => seeds.push(a.unit_vector(*v)),
            IdealGen::Arrow(k) => seeds.push(a.unit_vector(a.arrow(*k))),
            IdealGen::Element(v) => {
                match a.is_homogeneous(v) {
                    Some(d) if d >= 2 => {}
                    None if v.iter().all(|&x| x == 0) => {}
                    _ => return Err(AlgebraError::BadGenerator),
                }
                seeds.push(v.clone());
            }
            IdealGen::RadPower(n) => seeds.extend(radical_power(a, *n).space().vectors()),
        }
    }
    let mut span = EchelonBuilder::new(a.dim());
    let mut queue = Vec::new();
    for s in seeds {
        if span.insert(&s, f) {
            queue.push(s);
        }
    }
    let movers: Vec<usize> = (0..a.num_vertices())
        .chain(a.degree_range(1))
        .collect();
    while let Some(v) = queue.pop() {
        for &m in &movers {
            for w in [a.left_mul(m, &v), a.right_mul(&v, m)] {
                if span.insert(&w, f) {
                    queue.push(w);
                }
            }
        }
    }
    Ok(Ideal::from_space(a.clone(), span.finish(f), Some(gens.to_vec())))
}

/// `rad^n A`: everything of degree >= n.
pub fn radical_power(a: &Arc<Algebra>, n: usize) -> Ideal {
    let start = if n >= a.nilpotency_index() {
        a.dim()
    } else {
        a.degree_range(n).start
    };
    let vecs: Vec<Vec<u32>> = (start..a.dim()).map(|i| a.unit_vector(i)).collect();
    Ideal::from_space(
        a.clone(),
        Subspace::span(&vecs, a.dim(), a.field()),
        Some(vec![IdealGen::RadPower(n)]),
    )
}

/// `I·J`, spanned by products of basis vectors.
pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal, AlgebraError> {
    if !Arc::ptr_eq(&i.owner, &j.owner) {
        return Err(AlgebraError::OwnerMismatch);
    }
    let a = &i.owner;
    let f = a.field();
    let mut span = EchelonBuilder::new(a.dim());
    let iv = i.space.vectors();
    let jv = j.space.vectors();
    for x in &iv {
        for y in &jv {
            span.insert(&a.mul(x, y), f);
        }
    }
    Ok(Ideal::from_space(a.clone(), span.finish(f), None))
}
