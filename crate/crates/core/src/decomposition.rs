//! Decomposition of an act into indecomposable subacts.
//!
//! Two non-trivial elements belong to the same component exactly when they
//! are linked by a chain `a ~ s·a` that avoids the base point. Each class,
//! together with the base point, is a subact; the classes refine every
//! coproduct decomposition, so they form the unique decomposition.

use crate::act::{Act, SubAct};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parent: Act,
    /// Sorted by least non-trivial member.
    pub parts: Vec<SubAct>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Each part as a standalone act.
    pub fn part_acts(&self) -> Vec<Act> {
        self.parts
            .iter()
            .map(|p| self.parent.restrict(p).0)
            .collect()
    }
}

pub fn decompose(act: &Act) -> Result<Decomposition> {
    if act.is_initial() {
        return Err(Error::InitialObject);
    }
    let m = act.len();
    let mut uf = UnionFind::new(m);
    for a in (0..m).filter(|&a| !act.is_trivial_element(a)) {
        for s in 0..act.monoid().len() {
            let b = act.act(s, a);
            if !act.is_trivial_element(b) {
                uf.union(a, b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; m];
    for a in (0..m).filter(|&a| !act.is_trivial_element(a)) {
        let r = uf.find(a);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of_root[r]].push(a);
    }
    // classes are discovered in order of least member
    let parts = classes
        .into_iter()
        .map(|mut members| {
            members.extend(act.base_point());
            members.sort_unstable();
            SubAct::from_sorted(members)
        })
        .collect();
    Ok(Decomposition {
        parent: act.clone(),
        parts,
    })
}

/// Noninitial with a single component.
pub fn is_indecomposable(act: &Act) -> bool {
    decompose(act).is_ok_and(|d| d.len() == 1)
}

/// The coproduct criterion: the parts cover the carrier and each meets the
/// union of the others only in the trivial part. Parts need not be
/// indecomposable.
pub fn verify_decomposition(act: &Act, parts: &[SubAct]) -> Result<bool> {
    for p in parts {
        act.subact(p.members().iter().copied())?;
    }
    let trivial = act.trivial_part();
    let mut count = vec![0usize; act.len()];
    for p in parts {
        for &a in p.members() {
            count[a] += 1;
        }
    }
    Ok((0..act.len()).all(|a| {
        if trivial.contains(&a) {
            // the base point lies in every part of a pointed act
            true
        } else {
            count[a] == 1
        }
    }))
}
