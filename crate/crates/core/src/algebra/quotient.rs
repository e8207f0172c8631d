use std::sync::Arc;

use super::{
    build_algebra, to_sparse, Algebra, AlgebraError, BasisElem, Ideal, IdealGen, Presentation,
    Quiver, Relation, Sparse, Term,
};
use crate::linalg::EchelonBuilder;

/// `A/I` together with the projection from `A`.
#[derive(Clone, Debug)]
pub struct QuotientData {
    base: Arc<Algebra>,
    ideal: Ideal,
    quotient: Arc<Algebra>,
    kept: Vec<usize>,
    vertex_map: Vec<usize>,
    note: Option<String>,
}

impl QuotientData {
    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn quotient(&self) -> &Arc<Algebra> {
        &self.quotient
    }

    /// Base basis index of each quotient basis element.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Base vertex of each quotient vertex.
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Base vertex to quotient vertex, if it survives.
    pub fn vertex_in_quotient(&self, v: usize) -> Option<usize> {
        self.vertex_map.iter().position(|&w| w == v)
    }

    /// Why no presentation was attached to the quotient, if none was.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// Image in `A/I` of an element of `A`.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let r = self.ideal.space().reduce(v, self.base.field());
        self.kept.iter().map(|&k| r[k]).collect()
    }

    /// The section `A/I -> A` sending basis elements to basis elements.
    pub fn lift(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.base.dim()];
        for (i, &k) in self.kept.iter().enumerate() {
            out[k] = v[i];
        }
        out
    }
}

/// `A/I` for a graded ideal `I`.
pub fn quotient_algebra(a: &Arc<Algebra>, ideal: &Ideal) -> Result<QuotientData, AlgebraError> {
    if !Arc::ptr_eq(ideal.owner(), a) {
        return Err(AlgebraError::OwnerMismatch);
    }
    if !ideal.is_graded() {
        return Err(AlgebraError::NonGradedIdeal);
    }
    let f = a.field();
    let kept = ideal.space().non_pivots();
    let vertex_map: Vec<usize> = kept
        .iter()
        .copied()
        .take_while(|&k| k < a.num_vertices())
        .collect();
    let new_vertex = |v: usize| vertex_map.iter().position(|&w| w == v).unwrap();
    let arrow_map: Vec<Option<usize>> = {
        let arrows: Vec<usize> = kept
            .iter()
            .filter_map(|&k| a.arrow_index_of(k))
            .collect();
        (0..a.num_arrows())
            .map(|k| arrows.iter().position(|&x| x == k))
            .collect()
    };
    let basis: Vec<BasisElem> = kept
        .iter()
        .map(|&k| {
            let b = a.elem(k);
            BasisElem {
                degree: b.degree,
                source: new_vertex(b.source),
                target: new_vertex(b.target),
                label: b.label.clone(),
                word: b
                    .word
                    .as_ref()
                    .and_then(|w| w.iter().map(|&x| arrow_map[x]).collect()),
            }
        })
        .collect();
    let n = kept.len();
    let mut mult: Vec<Sparse> = Vec::with_capacity(n * n);
    let space = ideal.space();
    for &i in &kept {
        for &j in &kept {
            let p = a.mul_basis(i, j);
            if p.is_empty() {
                mult.push(Vec::new());
                continue;
            }
            let mut v = vec![0; a.dim()];
            for &(k, c) in p {
                v[k] = c;
            }
            let r = space.reduce(&v, f);
            mult.push(to_sparse(&kept.iter().map(|&k| r[k]).collect::<Vec<_>>()));
        }
    }
    let vertices: Vec<String> = vertex_map
        .iter()
        .map(|&v| a.vertex_names()[v].clone())
        .collect();
    let name = format!("{}/{}", a.name(), ideal.describe());
    let mut quotient = Algebra::from_parts(name.clone(), f, vertices, basis, mult, None)?;

    let mut note = None;
    match re_present(a, ideal, &vertex_map, &arrow_map, &name) {
        Ok(p) => match build_algebra(&p) {
            Ok(b) if b.dims_by_degree() == quotient.dims_by_degree() => {
                quotient.presentation = Some(p.validated()?);
            }
            Ok(_) => note = Some("re-presentation has the wrong dimension".into()),
            Err(e) => note = Some(format!("re-presentation failed: {e}")),
        },
        Err(e) => note = Some(e),
    }
    Ok(QuotientData {
        base: a.clone(),
        ideal: ideal.clone(),
        quotient: Arc::new(quotient),
        kept,
        vertex_map,
        note,
    })
}

/// Quiver with relations for `A/I`: generators that are vertices or arrows
/// delete them from the quiver, other generators become relations.
fn re_present(
    a: &Algebra,
    ideal: &Ideal,
    vertex_map: &[usize],
    arrow_map: &[Option<usize>],
    name: &str,
) -> Result<Presentation, String> {
    let pres = a.presentation().ok_or("base algebra has no presentation")?;
    let gens = ideal.generators().ok_or("ideal has no generator list")?;
    let f = a.field();
    let quiver = Quiver {
        vertices: vertex_map
            .iter()
            .map(|&v| pres.quiver.vertices[v].clone())
            .collect(),
        arrows: (0..a.num_arrows())
            .filter_map(|k| {
                let new = arrow_map[k]?;
                let old = &pres.quiver.arrows[k];
                let s = vertex_map.iter().position(|&v| v == old.source)?;
                let t = vertex_map.iter().position(|&v| v == old.target)?;
                debug_assert_eq!(new, arrow_map[..k].iter().flatten().count());
                Some(super::Arrow {
                    name: old.name.clone(),
                    source: s,
                    target: t,
                })
            })
            .collect(),
    };
    let rename = |w: &[usize]| -> Option<Vec<usize>> { w.iter().map(|&x| arrow_map[x]).collect() };
    let restrict = |r: &Relation| -> Relation {
        Relation {
            terms: r
                .terms
                .iter()
                .filter_map(|t| {
                    Some(Term {
                        coeff: t.coeff,
                        word: rename(&t.word)?,
                    })
                })
                .collect(),
        }
        .normalized(f)
    };
    let mut relations: Vec<Relation> = pres
        .relations
        .iter()
        .map(&restrict)
        .filter(|r| !r.terms.is_empty())
        .collect();
    let as_relation = |v: &[u32]| -> Option<Relation> {
        let mut terms = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                terms.push(Term {
                    coeff: c,
                    word: a.elem(i).word.clone()?,
                });
            }
        }
        Some(Relation { terms })
    };
    for g in gens {
        match g {
            IdealGen::Vertex(_) | IdealGen::Arrow(_) => {}
            IdealGen::Element(v) => {
                let r = as_relation(v).ok_or("generator without path form")?;
                let r = restrict(&r);
                if !r.terms.is_empty() {
                    relations.push(r);
                }
            }
            IdealGen::RadPower(n) if *n >= 2 => {
                for i in a.degree_range(*n) {
                    let r = as_relation(&a.unit_vector(i)).ok_or("generator without path form")?;
                    let r = restrict(&r);
                    if !r.terms.is_empty() {
                        relations.push(r);
                    }
                }
            }
            IdealGen::RadPower(_) => return Err("radical power below 2".into()),
        }
    }
    Presentation {
        name: name.to_string(),
        field: f,
        quiver,
        relations,
    }
    .validated()
    .map_err(|e| e.to_string())
}

/// Image of an ideal of `A` in `A/I`.
pub fn push_forward_ideal(q: &QuotientData, j: &Ideal) -> Result<Ideal, AlgebraError> {
    if !Arc::ptr_eq(j.owner(), &q.base) {
        return Err(AlgebraError::OwnerMismatch);
    }
    let b = &q.quotient;
    let f = b.field();
    let mut span = EchelonBuilder::new(b.dim());
    for v in j.space().vectors() {
        span.insert(&q.project(&v), f);
    }
    let gens = j.generators().map(|gs| {
        gs.iter()
            .filter_map(|g| match g {
                IdealGen::Vertex(v) => q.vertex_in_quotient(*v).map(IdealGen::Vertex),
                IdealGen::Arrow(k) => q
                    .kept
                    .iter()
                    .position(|&x| x == q.base.arrow(*k))
                    .and_then(|i| b.arrow_index_of(i))
                    .map(IdealGen::Arrow),
                IdealGen::Element(v) => {
                    let w = q.project(v);
                    w.iter().any(|&x| x != 0).then_some(IdealGen::Element(w))
                }
                IdealGen::RadPower(n) => Some(IdealGen::RadPower(*n)),
            })
            .collect()
    });
    Ok(Ideal::from_space(b.clone(), span.finish(f), gens))
}

/// `A^op`: same basis, reversed products and arrows.
pub fn opposite(a: &Arc<Algebra>) -> Result<Arc<Algebra>, AlgebraError> {
    let n = a.dim();
    let basis: Vec<BasisElem> = a
        .basis()
        .iter()
        .map(|b| BasisElem {
            degree: b.degree,
            source: b.target,
            target: b.source,
            label: if b.degree <= 1 {
                b.label.clone()
            } else {
                b.label.split('*').rev().collect::<Vec<_>>().join("*")
            },
            word: b.word.as_ref().map(|w| w.iter().rev().copied().collect()),
        })
        .collect();
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mult.push(a.mul_basis(j, i).clone());
        }
    }
    let pres = a.presentation().map(Presentation::opposite);
    Ok(Arc::new(Algebra::from_parts(
        format!("{}_op", a.name()),
        a.field(),
        a.vertex_names().to_vec(),
        basis,
        mult,
        pres,
    )?))
}
