use serde::{Deserialize, Serialize};

use super::checks::Named;
use super::{check_chain, check_ij, scan_radical_conditions, Config, Hints, Verdict, VerdictError};
use crate::fixtures;
use crate::session::Session;

/// A checker invocation, stored in each verdict so that it can be rerun.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Request {
    Ij {
        source: String,
        i: String,
        j: String,
        #[serde(default)]
        hints: Hints,
    },
    Chain {
        source: String,
        ideals: Vec<String>,
        #[serde(default)]
        hints: Hints,
    },
    Radical {
        source: String,
        #[serde(default)]
        hints: Hints,
    },
    Example {
        id: String,
        n: usize,
    },
}

fn named(s: &Session, spec: &str) -> Result<Named, VerdictError> {
    Ok((spec.to_string(), s.parse_ideal(spec)?))
}

pub fn run_request(req: &Request, cfg: &Config) -> Result<Vec<Verdict>, VerdictError> {
    let mut out = match req {
        Request::Ij { source, i, j, hints } => {
            let s = Session::load(source)?;
            vec![check_ij(&s.algebra, &named(&s, i)?, &named(&s, j)?, hints, cfg)?]
        }
        Request::Chain { source, ideals, hints } => {
            let s = Session::load(source)?;
            let chain = ideals.iter().map(|x| named(&s, x)).collect::<Result<Vec<_>, _>>()?;
            vec![check_chain(&s.algebra, &chain, hints, cfg)?]
        }
        Request::Radical { source, hints } => {
            let s = Session::load(source)?;
            scan_radical_conditions(&s.algebra, hints, cfg)?
        }
        Request::Example { id, n } => example_verdicts(id, *n, cfg)?,
    };
    for v in &mut out {
        v.request = Some(req.clone());
    }
    Ok(out)
}

/// The argument given for each built-in example, end to end: a chain of
/// ideals for the first four, the square criterion (on the algebra and on
/// its opposite) for the parametrised family.
pub fn example_verdicts(id: &str, n: usize, cfg: &Config) -> Result<Vec<Verdict>, VerdictError> {
    let text = fixtures::source(id, n).ok_or_else(|| VerdictError::UnknownExample(id.to_string()))?;
    let s = Session::load(&text)?;
    let hints = Hints::default();
    match id {
        "4.1" | "4.2" => {
            let chain = vec![named(&s, "I1")?, named(&s, "I2")?];
            Ok(vec![check_chain(&s.algebra, &chain, &hints, cfg)?])
        }
        "4.3" | "4.4" => Ok(vec![check_chain(&s.algebra, &[named(&s, "I")?], &hints, cfg)?]),
        "4.5" => {
            let mut out = Vec::new();
            for s in [s.clone(), s.opposite()?] {
                let i = named(&s, "I")?;
                out.push(check_ij(&s.algebra, &i, &i, &hints, cfg)?);
            }
            Ok(out)
        }
        _ => Err(VerdictError::UnknownExample(id.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub verdicts: usize,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl Replay {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Reruns the request recorded in each verdict with its own seed and
/// cutoffs and compares every check and the conclusion.
pub fn replay(recorded: &[Verdict]) -> Result<Replay, VerdictError> {
    let mut r = Replay {
        verdicts: 0,
        checks: 0,
        mismatches: Vec::new(),
    };
    let mut cache: Vec<((Request, Config), Vec<Verdict>)> = Vec::new();
    for v in recorded {
        let label = format!("{} {}{}", v.algebra, v.theorem, v.clause.as_ref().map(|c| format!(" ({c})")).unwrap_or_default());
        let Some(req) = &v.request else {
            r.mismatches.push(format!("{label}: no request recorded"));
            continue;
        };
        let cfg = Config {
            seed: v.seed,
            cutoff: v.cutoffs.pd,
            orbit_bound: v.cutoffs.orbit,
        };
        let key = (req.clone(), cfg);
        let fresh = match cache.iter().find(|(k, _)| *k == key) {
            Some((_, f)) => f.clone(),
            None => {
                let f = run_request(req, &cfg)?;
                cache.push((key, f.clone()));
                f
            }
        };
        r.verdicts += 1;
        let Some(w) = fresh
            .iter()
            .find(|w| w.algebra == v.algebra && w.theorem == v.theorem && w.clause == v.clause)
        else {
            r.mismatches.push(format!("{label}: not reproduced"));
            continue;
        };
        for c in &v.checks {
            r.checks += 1;
            match w.check(&c.name) {
                Some(d) if d.holds == c.holds => {}
                Some(d) => r.mismatches.push(format!("{label}: {} was {} now {}", c.name, c.holds, d.holds)),
                None => r.mismatches.push(format!("{label}: {} missing", c.name)),
            }
        }
        if w.conclusion != v.conclusion {
            r.mismatches.push(format!("{label}: conclusion {:?} now {:?}", v.conclusion, w.conclusion));
        }
    }
    Ok(r)
}
