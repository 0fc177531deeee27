//! Morphisms of acts and their enumeration.
//!
//! The search branches only on the images of a generating set of the source
//! (one representative per top class of the reachability preorder). Every
//! other image is forced by `f(s·g) = s·f(g)`, and a conflict between two
//! forced values prunes the branch immediately.

use std::ops::ControlFlow;

use crate::act::{Act, SubAct};
use crate::bounds::Bounds;
use crate::error::{check_bound, Error, Result};

/// An equivariant map between acts over the same monoid (base point
/// preserving when pointed).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActHom {
    source: Act,
    target: Act,
    map: Vec<usize>,
}

/// Injective / surjective / bijective flags of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct HomKind {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

impl ActHom {
    /// Checks equivariance and base point preservation.
    pub fn new(source: Act, target: Act, map: Vec<usize>) -> Result<ActHom> {
        source.same_category(&target)?;
        if map.len() != source.len() || map.iter().any(|&b| b >= target.len()) {
            return Err(Error::NotAHomomorphism);
        }
        if let (Some(t), Some(u)) = (source.base_point(), target.base_point()) {
            if map[t] != u {
                return Err(Error::NotAHomomorphism);
            }
        }
        for s in 0..source.monoid().len() {
            for a in 0..source.len() {
                if map[source.act(s, a)] != target.act(s, map[a]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(ActHom {
            source,
            target,
            map,
        })
    }

    pub(crate) fn from_parts(source: Act, target: Act, map: Vec<usize>) -> ActHom {
        ActHom {
            source,
            target,
            map,
        }
    }

    pub fn identity(act: &Act) -> ActHom {
        ActHom::from_parts(act.clone(), act.clone(), (0..act.len()).collect())
    }

    /// The morphism sending everything to the base point.
    pub fn zero(source: &Act, target: &Act) -> Result<ActHom> {
        source.same_category(target)?;
        let theta = target.base_point().ok_or(Error::NotPointed)?;
        Ok(ActHom::from_parts(
            source.clone(),
            target.clone(),
            vec![theta; source.len()],
        ))
    }

    pub fn source(&self) -> &Act {
        &self.source
    }

    pub fn target(&self) -> &Act {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &ActHom) -> Result<ActHom> {
        if first.target != self.source {
            return Err(Error::MixedCodomain);
        }
        Ok(ActHom::from_parts(
            first.source.clone(),
            self.target.clone(),
            first.map.iter().map(|&b| self.map[b]).collect(),
        ))
    }

    /// `f(A)` as a subact of the target.
    pub fn image(&self) -> SubAct {
        let mut members = self.map.clone();
        members.extend(self.target.base_point());
        members.sort_unstable();
        members.dedup();
        SubAct::from_sorted(members)
    }

    pub fn kind(&self) -> HomKind {
        let mut hit = vec![false; self.target.len()];
        let mut mono = true;
        for &b in &self.map {
            if std::mem::replace(&mut hit[b], true) {
                mono = false;
            }
        }
        let epi = hit.iter().all(|&h| h);
        HomKind {
            mono,
            epi,
            iso: mono && epi,
        }
    }

    /// Labels of the images, in source order.
    pub fn image_labels(&self) -> Vec<&str> {
        self.map.iter().map(|&b| self.target.label(b)).collect()
    }
}

/// Constraints for [`HomSearch`].
pub struct HomSearch<'a> {
    source: &'a Act,
    target: &'a Act,
    injective: bool,
    allowed: Option<&'a (dyn Fn(usize, usize) -> bool + Sync)>,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Act, target: &'a Act) -> Self {
        HomSearch {
            source,
            target,
            injective: false,
            allowed: None,
        }
    }

    /// Only injective maps.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Only maps with `allowed(a, f(a))` for every `a`.
    pub fn allowed(mut self, allowed: &'a (dyn Fn(usize, usize) -> bool + Sync)) -> Self {
        self.allowed = Some(allowed);
        self
    }

    /// Calls `visit` with the map of every morphism satisfying the
    /// constraints, in search order, until it breaks.
    pub fn for_each<B>(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        let (src, tgt) = (self.source, self.target);
        if src.same_category(tgt).is_err() {
            return None;
        }
        if self.injective && src.len() > tgt.len() {
            return None;
        }
        let mut state = State {
            map: vec![usize::MAX; src.len()],
            used: vec![false; tgt.len()],
            trail: Vec::with_capacity(src.len()),
        };
        if let (Some(t), Some(u)) = (src.base_point(), tgt.base_point()) {
            if !self.assign(&mut state, t, u) {
                return None;
            }
        }
        let gens = src.generating_set();
        match self.descend(&mut state, &gens, &mut visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    /// Every morphism satisfying the constraints, in search order.
    pub fn collect(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each::<()>(|map| {
            out.push(map.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        self.for_each(|map| ControlFlow::Break(map.to_vec()))
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each::<()>(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    fn descend<B>(
        &self,
        state: &mut State,
        gens: &[usize],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let Some((&g, rest)) = gens.split_first() else {
            debug_assert!(state.map.iter().all(|&b| b != usize::MAX));
            return visit(&state.map);
        };
        if state.map[g] != usize::MAX {
            return self.descend(state, rest, visit);
        }
        for b in 0..self.target.len() {
            let mark = state.trail.len();
            if self.propagate(state, g, b) {
                self.descend(state, rest, visit)?;
            }
            state.undo(mark);
        }
        ControlFlow::Continue(())
    }

    // Sets f(g) = b and forces f(s·g) = s·b for every s.
    fn propagate(&self, state: &mut State, g: usize, b: usize) -> bool {
        (0..self.source.monoid().len()).all(|s| {
            let x = self.source.act(s, g);
            let y = self.target.act(s, b);
            self.assign(state, x, y)
        })
    }

    fn assign(&self, state: &mut State, x: usize, y: usize) -> bool {
        let current = state.map[x];
        if current != usize::MAX {
            return current == y;
        }
        if self.injective && state.used[y] {
            return false;
        }
        if let Some(allowed) = self.allowed {
            if !allowed(x, y) {
                return false;
            }
        }
        state.map[x] = y;
        state.used[y] = true;
        state.trail.push(x);
        true
    }
}

struct State {
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl State {
    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }
}

/// All morphisms `source → target`, sorted lexicographically by map.
pub fn enumerate_homs(source: &Act, target: &Act, bounds: &Bounds) -> Result<Vec<ActHom>> {
    source.same_category(target)?;
    check_bound("hom search", source.len() * target.len(), bounds.max_homs)?;
    let mut maps = HomSearch::new(source, target).collect();
    maps.sort_unstable();
    Ok(maps
        .into_iter()
        .map(|map| ActHom::from_parts(source.clone(), target.clone(), map))
        .collect())
}

/// The first isomorphism found by the search, if the acts are isomorphic.
pub fn are_isomorphic(a: &Act, b: &Act) -> Option<ActHom> {
    if a.same_category(b).is_err() || a.len() != b.len() {
        return None;
    }
    HomSearch::new(a, b)
        .injective()
        .first()
        .map(|map| ActHom::from_parts(a.clone(), b.clone(), map))
}
