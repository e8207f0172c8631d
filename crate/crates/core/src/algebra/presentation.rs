use crate::linalg::Field;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateName(v.clone()));
            }
        }
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(AlgebraError::DuplicateName(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::UnknownVertex(a.name.clone()));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source and target of a word, or `None` if it is not a path.
    /// Words are read right to left: the last arrow is applied first.
    pub fn word_endpoints(&self, word: &[usize]) -> Option<(usize, usize)> {
        let (&first, &last) = (word.first()?, word.last()?);
        for w in word.windows(2) {
            if self.arrows[w[0]].source != self.arrows[w[1]].target {
                return None;
            }
        }
        Some((self.arrows[last].source, self.arrows[first].target))
    }

    pub fn word_name(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: u32,
    pub word: Vec<usize>,
}

/// A linear combination of parallel paths of one common length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn length(&self) -> Option<usize> {
        self.terms.first().map(|t| t.word.len())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Merges repeated words and drops zero coefficients.
    pub fn normalized(&self, f: Field) -> Relation {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.terms {
            let c = t.coeff % f.p();
            match out.iter_mut().find(|o| o.word == t.word) {
                Some(o) => o.coeff = f.add(o.coeff, c),
                None => out.push(Term {
                    coeff: c,
                    word: t.word.clone(),
                }),
            }
        }
        out.retain(|t| t.coeff != 0);
        Relation { terms: out }
    }

    pub fn display(&self, q: &Quiver, f: Field) -> String {
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let c = f.to_signed(t.coeff);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&q.word_name(&t.word));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// Checks every relation: composable, parallel, one length, length >= 2.
    /// Zero relations are dropped, repeated words merged, each relation
    /// scaled so its first coefficient is 1, and duplicates removed.
    pub fn validated(mut self) -> Result<Self, AlgebraError> {
        let f = self.field;
        let mut kept = Vec::new();
        for (idx, r) in self.relations.iter().enumerate() {
            for t in &r.terms {
                if self.quiver.word_endpoints(&t.word).is_none() {
                    return Err(AlgebraError::NoncomposableWord {
                        relation: idx,
                        word: self.quiver.word_name(&t.word),
                    });
                }
            }
            let r = r.normalized(f);
            let Some(len) = r.length() else {
                continue;
            };
            if r.terms.iter().any(|t| t.word.len() != len) {
                return Err(AlgebraError::NonHomogeneousRelation { relation: idx });
            }
            if len < 2 {
                return Err(AlgebraError::NotAdmissible { relation: idx });
            }
            let ends = self.quiver.word_endpoints(&r.terms[0].word);
            if r.terms.iter().any(|t| self.quiver.word_endpoints(&t.word) != ends) {
                return Err(AlgebraError::NonParallelRelation { relation: idx });
            }
            let lead = f.inv(r.terms[0].coeff);
            let r = Relation {
                terms: r
                    .terms
                    .into_iter()
                    .map(|t| Term {
                        coeff: f.mul(t.coeff, lead),
                        word: t.word,
                    })
                    .collect(),
            };
            if !kept.contains(&r) {
                kept.push(r);
            }
        }
        self.relations = kept;
        Ok(self)
    }

    pub fn opposite(&self) -> Presentation {
        Presentation {
            name: format!("{}_op", self.name),
            field: self.field,
            quiver: self.quiver.opposite(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|t| Term {
                            coeff: t.coeff,
                            word: t.word.iter().rev().copied().collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }
}
