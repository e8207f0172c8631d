use std::fmt;

use serde::Serialize;

use super::{Algebra, AlgebraError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

/// The separated quiver of a radical-square-zero algebra is a disjoint
/// union of Dynkin diagrams; one entry per connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepFiniteCertificate {
    pub components: Vec<DynkinType>,
}

/// Classifies a connected simple graph, or `None` if it is not Dynkin.
pub(crate) fn classify(n: usize, edges: &[(usize, usize)]) -> Option<DynkinType> {
    if edges.len() + 1 != n {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a == b || adj[a].contains(&b) {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|x| x.len() > 3) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] => Some(DynkinType::E6),
                [1, 2, 3] => Some(DynkinType::E7),
                [1, 2, 4] => Some(DynkinType::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

/// For `rad² A = 0`: a certificate of finite representation type when the
/// separated quiver is a union of Dynkin diagrams, `None` otherwise.
pub fn separated_quiver_dynkin(a: &Algebra) -> Result<Option<RepFiniteCertificate>, AlgebraError> {
    if a.nilpotency_index() > 2 {
        return Err(AlgebraError::RadicalSquareNotZero);
    }
    let n = a.num_vertices();
    // Vertex v is split into v (index v) and v' (index n + v);
    // an arrow u -> w becomes the edge u -- w'.
    let edges: Vec<(usize, usize)> = a
        .degree_range(1)
        .map(|i| (a.elem(i).source, n + a.elem(i).target))
        .collect();
    let mut comp = vec![usize::MAX; 2 * n];
    let mut components = Vec::new();
    for s in 0..2 * n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for &(a, b) in &edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if comp[other] == usize::MAX {
                    comp[other] = id;
                    members.push(other);
                }
            }
            i += 1;
        }
        components.push(members);
    }
    let mut types = Vec::new();
    for members in &components {
        let local = |v: usize| members.iter().position(|&m| m == v).unwrap();
        let es: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, _)| members.contains(a))
            .map(|&(a, b)| (local(a), local(b)))
            .collect();
        match classify(members.len(), &es) {
            Some(t) => types.push(t),
            None => return Ok(None),
        }
    }
    Ok(Some(RepFiniteCertificate { components: types }))
}
