//! A parsed source file with its algebra built and names resolved.

use std::sync::Arc;

use crate::algebra::{build_algebra, ideal_generate, Algebra, AlgebraError, Ideal, IdealGen, Relation, Term};
use crate::dsl::{parse_ideal_spec, parse_module_spec, parse_source, DslError, GenSpec, ModuleSpec, SourceFile};
use crate::rep::{ideal_as_module, proj, quotient_as_module, simple, RepError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("parse error: {0}")]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
}

#[derive(Clone, Debug)]
pub struct Session {
    pub source: SourceFile,
    pub algebra: Arc<Algebra>,
}

impl Session {
    pub fn load(text: &str) -> Result<Session, SessionError> {
        let source = parse_source(text)?;
        let algebra = Arc::new(build_algebra(&source.presentation)?);
        Ok(Session { source, algebra })
    }

    pub fn resolve_ideal(&self, gens: &[GenSpec]) -> Result<Ideal, SessionError> {
        let a = &self.algebra;
        let gens: Vec<IdealGen> = gens
            .iter()
            .map(|g| match g {
                GenSpec::Arrow(k) => IdealGen::Arrow(*k),
                GenSpec::Vertex(v) => IdealGen::Vertex(*v),
                GenSpec::RadPower(n) => IdealGen::RadPower(*n),
                GenSpec::Element(r) => IdealGen::Element(a.relation_element(r)),
            })
            .collect();
        Ok(ideal_generate(a, &gens)?)
    }

    /// A declared ideal by name.
    pub fn ideal(&self, name: &str) -> Result<Ideal, SessionError> {
        let gens = self
            .source
            .ideal(name)
            .ok_or_else(|| SessionError::UnknownIdeal(name.to_string()))?;
        self.resolve_ideal(gens)
    }

    /// A declared name or an inline generator list.
    pub fn parse_ideal(&self, spec: &str) -> Result<Ideal, SessionError> {
        let gens = parse_ideal_spec(&self.source, spec)?;
        self.resolve_ideal(&gens)
    }

    pub fn build_module(&self, spec: &ModuleSpec) -> Result<Representation, SessionError> {
        let a = &self.algebra;
        Ok(match spec {
            ModuleSpec::Simple(v) => simple(a, *v)?,
            ModuleSpec::Proj(v) => proj(a, *v)?,
            ModuleSpec::IdealAsModule(name) => ideal_as_module(a, &self.ideal(name)?)?,
            ModuleSpec::QuotientAsModule(name) => quotient_as_module(a, &self.ideal(name)?)?,
            ModuleSpec::Explicit { dims, matrices } => {
                Representation::new(a.clone(), dims.clone(), matrices.clone())?
            }
        })
    }

    /// A declared module name or an inline spec such as `simple:1`.
    pub fn parse_module(&self, spec: &str) -> Result<Representation, SessionError> {
        let m = parse_module_spec(&self.source, spec)?;
        self.build_module(&m)
    }

    /// The opposite algebra with every declared ideal carried along.
    /// Explicit modules are dropped: they are left modules of `A`, not of
    /// its opposite.
    pub fn opposite(&self) -> Result<Session, SessionError> {
        let presentation = self.source.presentation.opposite();
        let ideals = self
            .source
            .ideals
            .iter()
            .map(|(name, gens)| {
                let gens = gens
                    .iter()
                    .map(|g| match g {
                        GenSpec::Element(r) => GenSpec::Element(Relation {
                            terms: r
                                .terms
                                .iter()
                                .map(|t| Term {
                                    coeff: t.coeff,
                                    word: t.word.iter().rev().copied().collect(),
                                })
                                .collect(),
                        }),
                        other => other.clone(),
                    })
                    .collect();
                (name.clone(), gens)
            })
            .collect();
        let modules = self
            .source
            .modules
            .iter()
            .filter(|(_, m)| !matches!(m, ModuleSpec::Explicit { .. }))
            .cloned()
            .collect();
        let algebra = Arc::new(build_algebra(&presentation)?);
        Ok(Session {
            source: SourceFile {
                presentation,
                ideals,
                modules,
            },
            algebra,
        })
    }

    pub fn simples(&self) -> Vec<Representation> {
        (0..self.algebra.num_vertices())
            .map(|v| simple(&self.algebra, v).expect("vertex in range"))
            .collect()
    }
}
