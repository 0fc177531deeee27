//! JSON file formats for acts. Monoids use [`MonoidSpec`].
//!
//! ```json
//! {"monoid": "monoid.json",
//!  "elements": ["θ", "x"],
//!  "base_point": "θ",
//!  "action": {"s": ["θ", "θ"]}}
//! ```
//!
//! `monoid` is either a path (resolved by the caller) or an inline monoid
//! object. Rows for the identity, and for the zero of a pointed act, may be
//! omitted.

use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::act::Act;
use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Path(String),
    Inline(MonoidSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActSpec {
    pub monoid: MonoidRef,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<String>,
    pub action: IndexMap<String, Vec<String>>,
}

/// Validates an act file against an already resolved monoid.
pub fn act_from_spec(spec: &ActSpec, monoid: Arc<Monoid>) -> Result<Act> {
    let index: HashMap<&str, usize> = spec
        .elements
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let base = spec.base_point.as_deref().map(lookup).transpose()?;
    for key in spec.action.keys() {
        if monoid.index_of(key).is_none() {
            return Err(Error::UnknownLabel(key.clone()));
        }
    }
    let m = spec.elements.len();
    let rows = (0..monoid.len())
        .map(|s| match spec.action.get(monoid.label(s)) {
            Some(row) => row.iter().map(|l| lookup(l)).collect::<Result<Vec<_>>>(),
            None if s == monoid.identity() => Ok((0..m).collect()),
            None if base.is_some() && Some(s) == monoid.zero() => Ok(vec![base.unwrap(); m]),
            None => Err(Error::Shape(format!(
                "missing action row for {:?}",
                monoid.label(s)
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Act::new(monoid, spec.elements.clone(), rows, base)
}

/// Self-contained form with the monoid inlined and every row present.
pub fn act_to_spec(act: &Act) -> ActSpec {
    let monoid = act.monoid();
    ActSpec {
        monoid: MonoidRef::Inline(monoid.to_spec()),
        elements: act.labels().to_vec(),
        base_point: act.base_point().map(|b| act.label(b).to_string()),
        action: (0..monoid.len())
            .map(|s| {
                (
                    monoid.label(s).to_string(),
                    (0..act.len())
                        .map(|a| act.label(act.act(s, a)).to_string())
                        .collect(),
                )
            })
            .collect(),
    }
}

/// Parses an act whose monoid is inline.
pub fn act_from_json(json: &str) -> std::result::Result<Act, LoadError> {
    let spec: ActSpec = serde_json::from_str(json)?;
    match &spec.monoid {
        MonoidRef::Inline(m) => Ok(act_from_spec(&spec, Arc::new(Monoid::from_spec(m)?))?),
        MonoidRef::Path(p) => Err(LoadError::UnresolvedPath(p.clone())),
    }
}

/// Failure to read a file format.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("monoid path {0:?} must be resolved by the caller")]
    UnresolvedPath(String),
    #[error(transparent)]
    Domain(#[from] Error),
}
