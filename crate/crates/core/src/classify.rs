//! Decision procedures for cyclicity, hollowness, connectedness,
//! autoconnectedness and projectivity, plus bounded sweeps over whole
//! families of acts.
//!
//! Connectedness is decided through its finite characterisations: a plain
//! act is connected iff indecomposable, a pointed act iff hollow. The
//! definitional checks (every quotient indecomposable, every morphism into
//! `A ⊔ A` landing in one summand) are kept alongside as oracles.

use std::sync::Arc;

use serde::Serialize;

use crate::act::{Act, SubAct};
use crate::bounds::Bounds;
use crate::constructions::{coproduct, enumerate_congruences, quotient, Coproduct};
use crate::decomposition::{decompose, is_indecomposable};
use crate::enumerate::enumerate_acts;
use crate::error::{check_bound, Error, Result};
use crate::hom::{ActHom, HomSearch};
use crate::monoid::Monoid;
use crate::par;

/// Least `a` with `S·a = A`.
pub fn is_cyclic(act: &Act) -> Option<usize> {
    let m = act.len();
    (0..m).find(|&a| act.generated_subact([a]).len() == m)
}

/// Every pair of elements lies in a common cyclic subact.
pub fn is_locally_cyclic(act: &Act) -> bool {
    let reach = act.reachability();
    let m = act.len();
    (0..m).all(|a| (a..m).all(|b| (0..m).any(|c| reach[c][a] && reach[c][b])))
}

/// `B ∪ C ≠ A` for every proper subact `C`. Only maximal `C` need checking.
pub fn is_superfluous(act: &Act, sub: &SubAct) -> Result<bool> {
    act.subact(sub.members().iter().copied())?;
    Ok(act
        .maximal_subacts()
        .iter()
        .all(|c| sub.union(c).len() != act.len()))
}

/// Outcome of the hollowness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hollowness {
    pub hollow: bool,
    /// Two maximal proper subacts whose union is the whole act.
    pub witness: Option<(SubAct, SubAct)>,
}

/// Hollow iff at most one maximal proper subact exists: two distinct
/// maximal ones always cover the act, and any covering pair of proper
/// subacts enlarges to a covering pair of maximal ones.
pub fn is_hollow(act: &Act) -> Hollowness {
    let maximal = act.maximal_subacts();
    let witness = match maximal.as_slice() {
        [first, second, ..] => Some((first.clone(), second.clone())),
        _ => None,
    };
    Hollowness {
        hollow: witness.is_none(),
        witness,
    }
}

pub fn is_connected(act: &Act) -> Result<bool> {
    if act.is_initial() {
        return Err(Error::InitialObject);
    }
    Ok(if act.is_pointed() {
        is_hollow(act).hollow
    } else {
        is_indecomposable(act)
    })
}

/// Every image of the act, i.e. every quotient by a congruence, is
/// indecomposable (or initial).
pub fn connected_oracle(act: &Act, bounds: &Bounds) -> Result<bool> {
    if act.is_initial() {
        return Err(Error::InitialObject);
    }
    for c in enumerate_congruences(act, bounds)? {
        let (q, _) = quotient(act, &c)?;
        if !q.is_initial() && !is_indecomposable(&q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the autoconnectedness test.
#[derive(Debug, Clone)]
pub struct Autoconnectedness {
    pub autoconnected: bool,
    /// Lexicographically least `f: A → A ⊔ A` whose image meets the
    /// non-trivial part of both summands.
    pub witness: Option<ActHom>,
    pub square: Coproduct,
}

fn self_square(act: &Act) -> Result<Coproduct> {
    coproduct(act.monoid(), &[act.clone(), act.clone()], act.is_pointed())
}

// summand index of each non-trivial element of a coproduct total
fn summand_of(sum: &Coproduct) -> Vec<Option<usize>> {
    let mut owner = vec![None; sum.total.len()];
    for (i, nu) in sum.injections.iter().enumerate() {
        for &p in nu.map() {
            if !sum.total.is_trivial_element(p) {
                owner[p] = Some(i);
            }
        }
    }
    owner
}

fn splitting_maps(act: &Act, bounds: &Bounds) -> Result<(Coproduct, Vec<Vec<usize>>)> {
    let square = self_square(act)?;
    check_bound(
        "hom search",
        act.len() * square.total.len(),
        bounds.max_homs,
    )?;
    let owner = summand_of(&square);
    let mut maps: Vec<Vec<usize>> = HomSearch::new(act, &square.total)
        .collect()
        .into_iter()
        .filter(|map| {
            let hits = |i: usize| map.iter().any(|&b| owner[b] == Some(i));
            hits(0) && hits(1)
        })
        .collect();
    maps.sort_unstable();
    Ok((square, maps))
}

/// Plain acts: autoconnected iff indecomposable. Pointed acts: every
/// `f: A → A ⊔ A` has `π₁f(A) = θ` or `π₂f(A) = θ`.
pub fn is_autoconnected(act: &Act, bounds: &Bounds) -> Result<Autoconnectedness> {
    if act.is_initial() {
        return Err(Error::InitialObject);
    }
    if !act.is_pointed() && is_indecomposable(act) {
        return Ok(Autoconnectedness {
            autoconnected: true,
            witness: None,
            square: self_square(act)?,
        });
    }
    let (square, maps) = splitting_maps(act, bounds)?;
    let witness = maps
        .into_iter()
        .next()
        .map(|map| ActHom::new(act.clone(), square.total.clone(), map))
        .transpose()?;
    Ok(Autoconnectedness {
        autoconnected: witness.is_none(),
        witness,
        square,
    })
}

/// The morphism criterion applied in both categories, without the
/// indecomposability shortcut for plain acts.
pub fn autoconnected_oracle(act: &Act, bounds: &Bounds) -> Result<bool> {
    if act.is_initial() {
        return Err(Error::InitialObject);
    }
    Ok(splitting_maps(act, bounds)?.1.is_empty())
}

/// Subacts `B₁, B₂` covering `A` and a morphism `f: B₁ ⊔ B₂ → A ⊔ A` with
/// both projections non-zero that factors through `ρ: B₁ ⊔ B₂ → A`.
#[derive(Debug, Clone)]
pub struct StructuredWitness {
    pub b1: SubAct,
    pub b2: SubAct,
    /// `B₁ ⊔ B₂`.
    pub domain: Coproduct,
    /// `A ⊔ A`.
    pub target: Coproduct,
    /// The copairing of the two inclusions.
    pub rho: ActHom,
    pub f: ActHom,
}

pub fn non_autoconnected_witness_structured(
    act: &Act,
    bounds: &Bounds,
) -> Result<Option<StructuredWitness>> {
    if !act.is_pointed() {
        return Err(Error::NotPointed);
    }
    let auto = is_autoconnected(act, bounds)?;
    let Some(g) = auto.witness else {
        return Ok(None);
    };
    let target = auto.square;
    let owner = summand_of(&target);
    let preimage = |i: usize| -> SubAct {
        act.subact((0..act.len()).filter(|&a| {
            let b = g.apply(a);
            target.total.is_trivial_element(b) || owner[b] == Some(i)
        }))
        .expect("preimage of a subact is a subact")
    };
    let (b1, b2) = (preimage(0), preimage(1));
    let (p1, i1) = act.restrict(&b1);
    let (p2, i2) = act.restrict(&b2);
    let domain = coproduct(act.monoid(), &[p1, p2], true)?;
    let rho = domain.copair(&[i1, i2])?;
    let f = g.after(&rho)?;
    Ok(Some(StructuredWitness {
        b1,
        b2,
        domain,
        target,
        rho,
        f,
    }))
}

/// Re-checks every clause of a structured witness from scratch.
pub fn verify_structured_witness(act: &Act, w: &StructuredWitness) -> bool {
    let proper_cover = act.subact(w.b1.members().iter().copied()).is_ok()
        && act.subact(w.b2.members().iter().copied()).is_ok()
        && w.b1.len() < act.len()
        && w.b2.len() < act.len()
        && w.b1.union(&w.b2).len() == act.len();
    if !proper_cover {
        return false;
    }
    let Ok(f) = ActHom::new(
        w.domain.total.clone(),
        w.target.total.clone(),
        w.f.map().to_vec(),
    ) else {
        return false;
    };
    let nonzero = w.target.projections.len() == 2
        && w.target.projections.iter().all(|pi| {
            f.map()
                .iter()
                .any(|&b| !pi.target().is_trivial_element(pi.apply(b)))
        });
    if !nonzero {
        return false;
    }
    // ρ rebuilt from the member lists: ν_j(b) ↦ members_j[b]
    let mut rho = vec![usize::MAX; w.domain.total.len()];
    for (nu, sub) in w.domain.injections.iter().zip([&w.b1, &w.b2]) {
        for (b, &p) in nu.map().iter().enumerate() {
            rho[p] = sub.members()[b];
        }
    }
    let d = rho.len();
    (0..d).all(|u| (0..d).all(|v| rho[u] != rho[v] || f.apply(u) == f.apply(v)))
}

/// Retract test against the regular act: some `p ∈ P` and `g: P → S` with
/// `g(a)·p = a` for all `a`.
pub fn is_retract_of_regular(part: &Act, bounds: &Bounds) -> Result<Option<(usize, ActHom)>> {
    let regular = Act::regular(part.monoid().clone(), part.is_pointed())?;
    check_bound("hom search", part.len() * regular.len(), bounds.max_homs)?;
    for p in 0..part.len() {
        let allowed = |a: usize, s: usize| part.act(s, p) == a;
        if let Some(map) = HomSearch::new(part, &regular).allowed(&allowed).first() {
            return Ok(Some((p, ActHom::new(part.clone(), regular.clone(), map)?)));
        }
    }
    Ok(None)
}

/// Projective iff every indecomposable component is a retract of the
/// regular act.
pub fn is_projective(act: &Act, bounds: &Bounds) -> Result<bool> {
    if act.is_initial() {
        return Ok(true);
    }
    for part in decompose(act)?.part_acts() {
        if is_retract_of_regular(&part, bounds)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Oracle: the canonical epimorphism from one copy of `S` per non-trivial
/// element onto the act has a section.
pub fn free_cover_splits(act: &Act, bounds: &Bounds) -> Result<bool> {
    let pointed = act.is_pointed();
    let regular = Act::regular(act.monoid().clone(), pointed)?;
    let points: Vec<usize> = (0..act.len())
        .filter(|&a| !act.is_trivial_element(a))
        .collect();
    let copies = vec![regular.clone(); points.len()];
    let cover = coproduct(act.monoid(), &copies, pointed)?;
    check_bound("hom search", act.len() * cover.total.len(), bounds.max_homs)?;
    let legs = points
        .iter()
        .map(|&a| {
            let map = (0..regular.len()).map(|s| act.act(s, a)).collect();
            ActHom::new(regular.clone(), act.clone(), map)
        })
        .collect::<Result<Vec<_>>>()?;
    let epi = if legs.is_empty() {
        // the empty cover of an initial act
        return Ok(true);
    } else {
        cover.copair(&legs)?
    };
    let allowed = |a: usize, u: usize| epi.apply(u) == a;
    Ok(HomSearch::new(act, &cover.total)
        .allowed(&allowed)
        .first()
        .is_some())
}

/// All decided properties of one act.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub indecomposable: bool,
    pub hollow: bool,
    pub connected: bool,
    pub autoconnected: bool,
    pub cyclic: bool,
    pub locally_cyclic: bool,
    pub projective: bool,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Two maximal subacts covering the act.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_hollow: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_autoconnected: Option<NonAutoconnectedWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonAutoconnectedWitness {
    /// Image in `A ⊔ A` of each element, in carrier order.
    pub map: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<Vec<String>>,
}

fn names(act: &Act, sub: &SubAct) -> Vec<String> {
    sub.labels(act).into_iter().map(String::from).collect()
}

pub fn classify(act: &Act, bounds: &Bounds) -> Result<ClassificationReport> {
    let hollowness = is_hollow(act);
    let connected = is_connected(act)?;
    let auto = is_autoconnected(act, bounds)?;
    let generator = is_cyclic(act);
    let non_autoconnected = match &auto.witness {
        None => None,
        Some(g) => {
            let structured = if act.is_pointed() {
                non_autoconnected_witness_structured(act, bounds)?
            } else {
                None
            };
            Some(NonAutoconnectedWitness {
                map: (0..act.len())
                    .map(|a| {
                        [
                            act.label(a).to_string(),
                            g.target().label(g.apply(a)).to_string(),
                        ]
                    })
                    .collect(),
                b1: structured.as_ref().map(|w| names(act, &w.b1)),
                b2: structured.as_ref().map(|w| names(act, &w.b2)),
            })
        }
    };
    Ok(ClassificationReport {
        indecomposable: is_indecomposable(act),
        hollow: hollowness.hollow,
        connected,
        autoconnected: auto.autoconnected,
        cyclic: generator.is_some(),
        locally_cyclic: is_locally_cyclic(act),
        projective: is_projective(act, bounds)?,
        witnesses: Witnesses {
            generator: generator.map(|g| act.label(g).to_string()),
            non_hollow: hollowness
                .witness
                .map(|(b1, b2)| [names(act, &b1), names(act, &b2)]),
            non_autoconnected,
        },
    })
}

/// Connected but not cyclic acts of size up to `max_size`. An empty result
/// only means no counterexample exists up to that size.
pub fn check_steady_bounded(
    monoid: &Arc<Monoid>,
    max_size: usize,
    pointed: bool,
    bounds: &Bounds,
) -> Result<Vec<Act>> {
    let mut found = Vec::new();
    for size in 1..=max_size {
        let acts = enumerate_acts(monoid, size, pointed, bounds)?;
        let flags = par::map(&acts, |a| {
            !a.is_initial() && is_cyclic(a).is_none() && is_connected(a).unwrap_or(false)
        });
        found.extend(
            acts.into_iter()
                .zip(flags)
                .filter(|(_, f)| *f)
                .map(|(a, _)| a),
        );
    }
    Ok(found)
}

/// Result of checking that projective acts are connected exactly when
/// cyclic.
#[derive(Debug, Clone)]
pub struct ProjectiveCyclicCheck {
    pub holds: bool,
    pub checked: usize,
    pub counterexamples: Vec<Act>,
}

/// Over every enumerated plain act (and pointed act, when the monoid has a
/// zero) of size up to `max_size`: `projective ∧ connected ⇔ projective ∧
/// cyclic`.
pub fn projective_connected_iff_cyclic_check(
    monoid: &Arc<Monoid>,
    max_size: usize,
    bounds: &Bounds,
) -> Result<ProjectiveCyclicCheck> {
    let mut acts = Vec::new();
    for pointed in [false, true] {
        if pointed && monoid.zero().is_none() {
            continue;
        }
        for size in 1..=max_size {
            acts.extend(enumerate_acts(monoid, size, pointed, bounds)?);
        }
    }
    let verdicts = par::map(&acts, |a| -> Result<bool> {
        if a.is_initial() {
            return Ok(true);
        }
        let projective = is_projective(a, bounds)?;
        Ok(!projective || is_connected(a)? == is_cyclic(a).is_some())
    });
    let mut counterexamples = Vec::new();
    for (a, v) in acts.iter().zip(verdicts) {
        if !v? {
            counterexamples.push(a.clone());
        }
    }
    Ok(ProjectiveCyclicCheck {
        holds: counterexamples.is_empty(),
        checked: acts.len(),
        counterexamples,
    })
}
