use std::collections::HashMap;

use super::{to_sparse, AlgebraError, Algebra, BasisElem, Presentation, Sparse};
use crate::linalg::{EchelonBuilder, Field, Subspace};

/// Largest path length explored before declaring the algebra infinite.
pub const DEGREE_CAP: usize = 64;

/// Largest total dimension built before giving up.
pub const DIM_BUDGET: usize = 20_000;

/// One graded piece `A_d`, built as `F_d / R_d` where `F_d` is spanned by
/// pairs `(arrow, basis element of A_{d-1})` and `R_d` by relation images.
struct Level {
    col_of: HashMap<(usize, usize), usize>,
    cols: Vec<(usize, usize)>,
    rel: Subspace,
    basis_cols: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    words: Vec<Vec<usize>>,
}

impl Level {
    fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    fn reduce(&self, w: &[u32], f: Field) -> Vec<u32> {
        let r = self.rel.reduce(w, f);
        self.basis_cols.iter().map(|&c| r[c]).collect()
    }
}

struct Builder<'a> {
    pres: &'a Presentation,
    f: Field,
    levels: Vec<Level>,
}

impl Builder<'_> {
    /// `a_k · v` in `F_{d+1}` coordinates, for `v` in `A_d`.
    fn lift(&self, k: usize, d: usize, v: &[u32]) -> Vec<u32> {
        let next = &self.levels[d + 1];
        let mut w = vec![0; next.cols.len()];
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                if let Some(&col) = next.col_of.get(&(k, c)) {
                    w[col] = self.f.add(w[col], x);
                }
            }
        }
        w
    }

    /// `a_k · v` in `A_{d+1}`; zero past the top degree.
    fn apply(&self, k: usize, d: usize, v: &[u32]) -> Vec<u32> {
        if d + 1 >= self.levels.len() {
            return Vec::new();
        }
        self.levels[d + 1].reduce(&self.lift(k, d, v), self.f)
    }

    fn push_level(&mut self, d: usize) {
        let arrows = &self.pres.quiver.arrows;
        let prev = &self.levels[d - 1];
        let mut cols = Vec::new();
        let mut col_of = HashMap::new();
        for (k, a) in arrows.iter().enumerate() {
            for c in 0..prev.dim() {
                if prev.tgt[c] == a.source {
                    col_of.insert((k, c), cols.len());
                    cols.push((k, c));
                }
            }
        }
        let width = cols.len();
        self.levels.push(Level {
            col_of,
            cols,
            rel: Subspace::zero(width),
            basis_cols: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            words: Vec::new(),
        });

        let f = self.f;
        let mut span = EchelonBuilder::new(width);
        for r in &self.pres.relations {
            let len = r.terms[0].word.len();
            if len > d {
                continue;
            }
            let start = *r.terms[0].word.last().unwrap();
            let start_vertex = arrows[start].source;
            let base = d - len;
            for q in 0..self.levels[base].dim() {
                if self.levels[base].tgt[q] != start_vertex {
                    continue;
                }
                let mut image = vec![0; width];
                for t in &r.terms {
                    let mut v = vec![0; self.levels[base].dim()];
                    v[q] = 1;
                    let mut deg = base;
                    for &k in t.word[1..].iter().rev() {
                        v = self.apply(k, deg, &v);
                        deg += 1;
                    }
                    let lifted = self.lift(t.word[0], d - 1, &v);
                    crate::linalg::axpy(&mut image, t.coeff, &lifted, f);
                }
                span.insert(&image, f);
            }
        }
        let rel = span.finish(f);
        let basis_cols = rel.non_pivots();
        let (lower, upper) = self.levels.split_at_mut(d);
        let prev = &lower[d - 1];
        let level = &mut upper[0];
        for &col in &basis_cols {
            let (k, c) = level.cols[col];
            level.src.push(prev.src[c]);
            level.tgt.push(arrows[k].target);
            let mut w = vec![k];
            w.extend_from_slice(&prev.words[c]);
            level.words.push(w);
        }
        level.rel = rel;
        level.basis_cols = basis_cols;
    }
}

/// Builds `kQ/I` for a presentation with length-homogeneous relations.
pub fn build_algebra(pres: &Presentation) -> Result<Algebra, AlgebraError> {
    let pres = pres.clone().validated()?;
    let f = pres.field;
    let n = pres.quiver.vertices.len();
    let level0 = Level {
        col_of: HashMap::new(),
        cols: Vec::new(),
        rel: Subspace::zero(0),
        basis_cols: (0..n).collect(),
        src: (0..n).collect(),
        tgt: (0..n).collect(),
        words: vec![Vec::new(); n],
    };
    let mut b = Builder {
        pres: &pres,
        f,
        levels: vec![level0],
    };
    if let Some(w) = surviving_cycle(&pres) {
        return Err(AlgebraError::InfiniteDimensional {
            reason: format!(
                "every power of the cycle {} is nonzero",
                pres.quiver.word_name(&w)
            ),
        });
    }
    let mut d = 1;
    let mut total = n;
    while b.levels.last().unwrap().dim() > 0 {
        if d > DEGREE_CAP {
            return Err(AlgebraError::InfiniteDimensional {
                reason: format!("paths of length {DEGREE_CAP} survive the relations"),
            });
        }
        b.push_level(d);
        total += b.levels.last().unwrap().dim();
        if total > DIM_BUDGET {
            return Err(AlgebraError::DimensionBudgetExceeded {
                degree: d,
                budget: DIM_BUDGET,
            });
        }
        d += 1;
    }
    b.levels.pop();
    let top = b.levels.len();

    let mut offset = vec![0usize; top + 1];
    for d in 0..top {
        offset[d + 1] = offset[d] + b.levels[d].dim();
    }
    let dim = offset[top];
    let mut basis = Vec::with_capacity(dim);
    let mut local = Vec::with_capacity(dim);
    for (d, lv) in b.levels.iter().enumerate() {
        for j in 0..lv.dim() {
            let label = if d == 0 {
                format!("e_{}", pres.quiver.vertices[j])
            } else {
                pres.quiver.word_name(&lv.words[j])
            };
            basis.push(BasisElem {
                degree: d,
                source: lv.src[j],
                target: lv.tgt[j],
                label,
                word: Some(lv.words[j].clone()),
            });
            local.push(j);
        }
    }

    let mut mult: Vec<Sparse> = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        let di = basis[i].degree;
        for j in 0..dim {
            let dj = basis[j].degree;
            let prod = if di == 0 {
                if basis[j].target == i {
                    vec![(j, 1)]
                } else {
                    Vec::new()
                }
            } else if dj == 0 {
                if basis[i].source == j {
                    vec![(i, 1)]
                } else {
                    Vec::new()
                }
            } else if basis[i].source != basis[j].target || di + dj >= top {
                Vec::new()
            } else {
                let lv = &b.levels[di];
                let (k, c) = lv.cols[lv.basis_cols[local[i]]];
                let cg = offset[di - 1] + c;
                let e = di - 1 + dj;
                let mut v = vec![0; b.levels[e].dim()];
                for &(g, x) in &mult[cg * dim + j] {
                    v[g - offset[e]] = x;
                }
                let w = b.apply(k, e, &v);
                to_sparse(&w)
                    .into_iter()
                    .map(|(t, x)| (t + offset[e + 1], x))
                    .collect()
            };
            mult[i * dim + j] = prod;
        }
    }

    Algebra::from_parts(
        pres.name.clone(),
        f,
        pres.quiver.vertices.clone(),
        basis,
        mult,
        Some(pres),
    )
}

/// A cycle all of whose powers survive, found in a monomial quotient.
///
/// Killing every arrow that occurs in a non-monomial relation gives an
/// epimorphism onto a monomial algebra. That algebra is infinite exactly
/// when its overlap graph (nonzero paths of length `L - 1`, joined when
/// they overlap in a nonzero path of length `L`) has a cycle.
pub(crate) fn surviving_cycle(pres: &Presentation) -> Option<Vec<usize>> {
    let q = &pres.quiver;
    let mut killed = vec![false; q.arrows.len()];
    for r in pres.relations.iter().filter(|r| !r.is_monomial()) {
        for t in &r.terms {
            for &a in &t.word {
                killed[a] = true;
            }
        }
    }
    let monos: Vec<&[usize]> = pres
        .relations
        .iter()
        .filter(|r| r.is_monomial())
        .map(|r| r.terms[0].word.as_slice())
        .filter(|w| w.iter().all(|&a| !killed[a]))
        .collect();
    let live: Vec<usize> = (0..q.arrows.len()).filter(|&a| !killed[a]).collect();
    let len = monos.iter().map(|w| w.len()).max().unwrap_or(2).max(2);
    // Nonzero paths of length len - 1, built by left extension.
    let has_bad_prefix = |w: &[usize]| monos.iter().any(|m| w.starts_with(m));
    let mut states: Vec<Vec<usize>> = live.iter().map(|&a| vec![a]).collect();
    for _ in 1..len - 1 {
        let mut next = Vec::new();
        for p in &states {
            for &a in &live {
                if q.arrows[a].source == q.arrows[p[0]].target {
                    let mut w = vec![a];
                    w.extend_from_slice(p);
                    if !has_bad_prefix(&w) {
                        next.push(w);
                    }
                }
            }
        }
        states = next;
        if states.len() > 200_000 {
            return None;
        }
    }
    let index: HashMap<&[usize], usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); states.len()];
    for (i, p) in states.iter().enumerate() {
        for &a in &live {
            if q.arrows[a].source != q.arrows[p[0]].target {
                continue;
            }
            let mut w = vec![a];
            w.extend_from_slice(p);
            if has_bad_prefix(&w) {
                continue;
            }
            if let Some(&j) = index.get(&w[..w.len() - 1]) {
                succ[i].push((j, a));
            }
        }
    }
    // Iterative DFS with colours; a back edge closes a cycle.
    let n = states.len();
    let mut colour = vec![0u8; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    for root in 0..n {
        if colour[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        colour[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let (w, a) = succ[v][*next];
                *next += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        parent[w] = Some((v, a));
                        stack.push((w, 0));
                    }
                    1 => {
                        // Cycle w -> ... -> v -> w; collect arrows, latest first.
                        let mut word = vec![a];
                        let mut cur = v;
                        while cur != w {
                            let (p, b) = parent[cur].unwrap();
                            word.push(b);
                            cur = p;
                        }
                        return Some(word);
                    }
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    None
}
