//! Finite left acts, plain or pointed, and their subacts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::bounds::Bounds;
use crate::error::{check_bound, Error, Result};
use crate::monoid::Monoid;

/// A finite left act over a [`Monoid`].
///
/// Plain and pointed acts share this type; a pointed act carries a base
/// point `θ` fixed by every element and hit by the zero of the monoid.
/// Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Act {
    inner: Arc<ActInner>,
}

#[derive(PartialEq, Eq, Hash)]
struct ActInner {
    monoid: Arc<Monoid>,
    labels: Vec<String>,
    // action[s * m + a] = s·a
    action: Vec<usize>,
    base: Option<usize>,
}

impl fmt::Debug for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.len();
        let mut d = f.debug_struct("Act");
        d.field("elements", &self.inner.labels);
        if let Some(b) = self.inner.base {
            d.field("base_point", &self.inner.labels[b]);
        }
        let rows: Vec<(&str, Vec<&str>)> = (0..self.monoid().len())
            .map(|s| {
                (
                    self.monoid().label(s),
                    (0..m).map(|a| self.label(self.act(s, a))).collect(),
                )
            })
            .collect();
        d.field("action", &rows).finish()
    }
}

impl Act {
    /// Validates an action given as one row per monoid element:
    /// `rows[s][a]` is the index of `s·a`.
    pub fn new(
        monoid: Arc<Monoid>,
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
        base: Option<usize>,
    ) -> Result<Act> {
        let n = monoid.len();
        let m = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape(format!("action must be {n}x{m}")));
        }
        if let Some(&bad) = rows.iter().flatten().find(|&&x| x >= m) {
            return Err(Error::Shape(format!("action entry {bad} out of range")));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let action: Vec<usize> = rows.into_iter().flatten().collect();
        let act = Act::from_parts(monoid, labels, action, base);
        act.check_axioms()?;
        Ok(act)
    }

    /// Builds and validates from an action function.
    pub fn from_fn(
        monoid: Arc<Monoid>,
        labels: Vec<String>,
        base: Option<usize>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Act> {
        let m = labels.len();
        let rows = (0..monoid.len())
            .map(|s| (0..m).map(|a| f(s, a)).collect())
            .collect();
        Act::new(monoid, labels, rows, base)
    }

    pub(crate) fn from_parts(
        monoid: Arc<Monoid>,
        labels: Vec<String>,
        action: Vec<usize>,
        base: Option<usize>,
    ) -> Act {
        Act {
            inner: Arc::new(ActInner {
                monoid,
                labels,
                action,
                base,
            }),
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let monoid = self.monoid();
        let m = self.len();
        let one = monoid.identity();
        if let Some(a) = (0..m).find(|&a| self.act(one, a) != a) {
            return Err(Error::IdentityActionViolated(a));
        }
        if let Some(theta) = self.inner.base {
            let zero = monoid.zero().ok_or(Error::PointedNeedsZero)?;
            if theta >= m {
                return Err(Error::Shape(format!("base point {theta} out of range")));
            }
            if let Some(a) = (0..m).find(|&a| self.act(zero, a) != theta) {
                return Err(Error::BasePointViolated { s: zero, a });
            }
            if let Some(s) = (0..monoid.len()).find(|&s| self.act(s, theta) != theta) {
                return Err(Error::BasePointViolated { s, a: theta });
            }
        }
        for s in 0..monoid.len() {
            for t in 0..monoid.len() {
                let st = monoid.mul(s, t);
                for a in 0..m {
                    if self.act(s, self.act(t, a)) != self.act(st, a) {
                        return Err(Error::CompatibilityViolated { s, t, a });
                    }
                }
            }
        }
        Ok(())
    }

    /// The initial object of the category: `∅` for plain acts, `{θ}` for
    /// pointed ones.
    pub fn initial(monoid: Arc<Monoid>, pointed: bool) -> Result<Act> {
        if pointed {
            if monoid.zero().is_none() {
                return Err(Error::PointedNeedsZero);
            }
            let n = monoid.len();
            Ok(Act::from_parts(
                monoid,
                vec!["θ".into()],
                vec![0; n],
                Some(0),
            ))
        } else {
            Ok(Act::from_parts(monoid, Vec::new(), Vec::new(), None))
        }
    }

    /// The monoid acting on itself by left multiplication; pointed at the
    /// zero when `pointed` is set.
    pub fn regular(monoid: Arc<Monoid>, pointed: bool) -> Result<Act> {
        let base = if pointed {
            Some(monoid.zero().ok_or(Error::PointedNeedsZero)?)
        } else {
            None
        };
        let n = monoid.len();
        let labels = monoid.labels().to_vec();
        let action = (0..n)
            .flat_map(|s| (0..n).map(move |a| (s, a)))
            .map(|(s, a)| monoid.mul(s, a))
            .collect();
        Ok(Act::from_parts(monoid, labels, action, base))
    }

    #[inline]
    pub fn act(&self, s: usize, a: usize) -> usize {
        self.inner.action[s * self.inner.labels.len() + a]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.inner.monoid
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.inner.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    pub fn base_point(&self) -> Option<usize> {
        self.inner.base
    }

    pub fn is_pointed(&self) -> bool {
        self.inner.base.is_some()
    }

    pub fn is_trivial_element(&self, a: usize) -> bool {
        self.inner.base == Some(a)
    }

    /// True for `∅` (plain) and `{θ}` (pointed).
    pub fn is_initial(&self) -> bool {
        self.len() == usize::from(self.is_pointed())
    }

    /// The members of the initial subact: nothing, or the base point.
    pub fn trivial_part(&self) -> Vec<usize> {
        self.inner.base.into_iter().collect()
    }

    /// The same act with relabelled elements (no revalidation needed).
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Act> {
        if labels.len() != self.len() {
            return Err(Error::Shape("label count differs from carrier".into()));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Act::from_parts(
            self.monoid().clone(),
            labels,
            self.inner.action.clone(),
            self.inner.base,
        ))
    }

    /// Fails unless `other` lives in the same category.
    pub fn same_category(&self, other: &Act) -> Result<()> {
        if self.monoid() != other.monoid() {
            return Err(Error::MixedMonoids);
        }
        if self.is_pointed() != other.is_pointed() {
            return Err(Error::MixedPointedness);
        }
        Ok(())
    }

    /// Forgets the base point, regarding a pointed act as a plain one.
    pub fn forget_base_point(&self) -> Act {
        Act::from_parts(
            self.monoid().clone(),
            self.inner.labels.clone(),
            self.inner.action.clone(),
            None,
        )
    }

    /// `S·a`, ascending.
    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.monoid().len()).map(|s| self.act(s, a)).collect();
        set.into_iter().collect()
    }

    /// `reach[a][b]` iff `b ∈ S·a`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let m = self.len();
        (0..m)
            .map(|a| {
                let mut row = vec![false; m];
                for s in 0..self.monoid().len() {
                    row[self.act(s, a)] = true;
                }
                row
            })
            .collect()
    }

    /// Least representatives of the top classes of the reachability
    /// preorder. Their orbits cover the carrier and no proper subset does.
    pub fn generating_set(&self) -> Vec<usize> {
        let reach = self.reachability();
        let m = self.len();
        (0..m)
            .filter(|&a| {
                (0..m).all(|b| !reach[b][a] || reach[a][b])
                    && !(0..a).any(|b| reach[a][b] && reach[b][a])
            })
            .collect()
    }

    /// Checks closure (and base point membership) of a member set.
    pub fn subact(&self, members: impl IntoIterator<Item = usize>) -> Result<SubAct> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.iter().any(|&a| a >= self.len()) {
            return Err(Error::NotSubact);
        }
        if let Some(theta) = self.inner.base {
            if !members.contains(&theta) {
                return Err(Error::NotSubact);
            }
        }
        for &a in &members {
            for s in 0..self.monoid().len() {
                if !members.contains(&self.act(s, a)) {
                    return Err(Error::NotSubact);
                }
            }
        }
        Ok(SubAct {
            members: members.into_iter().collect(),
        })
    }

    /// Smallest subact containing `seeds` (and the base point).
    pub fn generated_subact(&self, seeds: impl IntoIterator<Item = usize>) -> SubAct {
        let mut members: BTreeSet<usize> = self.inner.base.into_iter().collect();
        for a in seeds {
            for s in 0..self.monoid().len() {
                members.insert(self.act(s, a));
            }
        }
        SubAct {
            members: members.into_iter().collect(),
        }
    }

    pub fn full_subact(&self) -> SubAct {
        SubAct {
            members: (0..self.len()).collect(),
        }
    }

    pub fn trivial_subact(&self) -> SubAct {
        SubAct {
            members: self.trivial_part(),
        }
    }

    /// Every subact, sorted by size and then by member list.
    pub fn enumerate_subacts(&self, bounds: &Bounds) -> Result<Vec<SubAct>> {
        check_bound("subact carrier", self.len(), bounds.max_subacts.min(64))?;
        let principal: Vec<u64> = (0..self.len())
            .map(|a| self.orbit(a).iter().fold(0u64, |acc, &b| acc | 1 << b))
            .collect();
        let trivial = self.inner.base.map_or(0u64, |t| 1 << t);
        let mut all: BTreeSet<u64> = BTreeSet::from([trivial]);
        for p in principal {
            let grown: Vec<u64> = all.iter().map(|&mask| mask | p).collect();
            all.extend(grown);
        }
        let mut subacts: Vec<SubAct> = all
            .into_iter()
            .map(|mask| SubAct {
                members: (0..self.len()).filter(|&a| mask >> a & 1 == 1).collect(),
            })
            .collect();
        subacts.sort();
        Ok(subacts)
    }

    /// Proper subacts that are maximal under inclusion, sorted like
    /// [`Act::enumerate_subacts`].
    ///
    /// The complement of a subact is upward closed in the reachability
    /// preorder, so the maximal proper subacts are exactly the complements of
    /// the top classes. No enumeration is needed.
    pub fn maximal_subacts(&self) -> Vec<SubAct> {
        if self.is_initial() {
            return Vec::new();
        }
        let reach = self.reachability();
        let m = self.len();
        let mut out: Vec<SubAct> = self
            .generating_set()
            .into_iter()
            .map(|g| {
                let class: Vec<bool> = (0..m).map(|b| reach[g][b] && reach[b][g]).collect();
                SubAct {
                    members: (0..m).filter(|&b| !class[b]).collect(),
                }
            })
            .collect();
        out.sort();
        out
    }

    /// The subact as an act in its own right, with the inclusion morphism.
    pub fn restrict(&self, sub: &SubAct) -> (Act, crate::hom::ActHom) {
        let mut position = vec![usize::MAX; self.len()];
        for (i, &a) in sub.members.iter().enumerate() {
            position[a] = i;
        }
        let k = sub.len();
        let n = self.monoid().len();
        let mut action = Vec::with_capacity(n * k);
        for s in 0..n {
            for &a in &sub.members {
                action.push(position[self.act(s, a)]);
            }
        }
        let labels = sub
            .members
            .iter()
            .map(|&a| self.label(a).to_string())
            .collect();
        let base = self.inner.base.map(|t| position[t]);
        let part = Act::from_parts(self.monoid().clone(), labels, action, base);
        let inclusion =
            crate::hom::ActHom::from_parts(part.clone(), self.clone(), sub.members.clone());
        (part, inclusion)
    }
}

/// A set of act elements closed under the action (and containing the base
/// point of a pointed act). Members are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubAct {
    members: Vec<usize>,
}

impl PartialOrd for SubAct {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubAct {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl SubAct {
    pub(crate) fn from_sorted(members: Vec<usize>) -> SubAct {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SubAct { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &SubAct) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    pub fn union(&self, other: &SubAct) -> SubAct {
        let set: BTreeSet<usize> = self.members.iter().chain(&other.members).copied().collect();
        SubAct {
            members: set.into_iter().collect(),
        }
    }

    pub fn intersection(&self, other: &SubAct) -> SubAct {
        SubAct {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&a| other.contains(a))
                .collect(),
        }
    }

    pub fn labels<'a>(&'a self, parent: &'a Act) -> Vec<&'a str> {
        self.members.iter().map(|&a| parent.label(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn names(act: &Act, sub: &SubAct) -> Vec<String> {
        sub.labels(act).into_iter().map(String::from).collect()
    }

    fn idx(act: &Act, labels: &[&str]) -> Vec<usize> {
        labels.iter().map(|l| act.index_of(l).unwrap()).collect()
    }

    #[test]
    fn worked_example_validates() {
        let a = catalog::worked_example_act();
        assert_eq!(a.len(), 5);
        assert_eq!(a.base_point(), Some(0));
        assert_eq!(a.label(0), "θ");
    }

    #[test]
    fn one_point_act_over_anything() {
        for m in [catalog::truncated_powers(), catalog::multiplicative_mod(6)] {
            let m = Arc::new(m);
            let act = Act::from_fn(m.clone(), vec!["p".into()], None, |_, _| 0).unwrap();
            assert!(!act.is_initial());
            let pointed = Act::from_fn(m, vec!["θ".into()], Some(0), |_, _| 0).unwrap();
            assert!(pointed.is_initial());
        }
    }

    #[test]
    fn broken_compatibility_detected() {
        let a = catalog::worked_example_act();
        let m = a.monoid().clone();
        let s = m.index_of("s").unwrap();
        let z = a.index_of("z").unwrap();
        let rows: Vec<Vec<usize>> = (0..m.len())
            .map(|r| {
                (0..a.len())
                    .map(|e| if r == s && e == z { z } else { a.act(r, e) })
                    .collect()
            })
            .collect();
        let err = Act::new(m, a.labels().to_vec(), rows, Some(0)).unwrap_err();
        assert!(
            matches!(err, Error::CompatibilityViolated { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn axiom_errors() {
        let m = Arc::new(catalog::truncated_powers());
        let labels = vec!["θ".to_string(), "a".into()];
        // identity moves a
        let err = Act::from_fn(m.clone(), labels.clone(), Some(0), |_, _| 0).unwrap_err();
        assert_eq!(err, Error::IdentityActionViolated(1));
        // zero must send a to θ
        let err = Act::from_fn(m.clone(), labels.clone(), Some(0), |_, a| a).unwrap_err();
        assert!(matches!(err, Error::BasePointViolated { .. }));
        let g = Arc::new(catalog::cyclic_group(2));
        let err = Act::from_fn(g, vec!["θ".into()], Some(0), |_, _| 0).unwrap_err();
        assert_eq!(err, Error::PointedNeedsZero);
    }

    #[test]
    fn generated_subacts() {
        let a = catalog::worked_example_act();
        let x = idx(&a, &["x"]);
        assert_eq!(names(&a, &a.generated_subact(x)), ["θ", "x", "z", "t"]);
        let z = idx(&a, &["z"]);
        assert_eq!(names(&a, &a.generated_subact(z)), ["θ", "z", "t"]);
        assert_eq!(names(&a, &a.generated_subact([])), ["θ"]);
    }

    #[test]
    fn subact_enumeration_worked_example() {
        let a = catalog::worked_example_act();
        let subs = a.enumerate_subacts(&Bounds::default()).unwrap();
        let got: Vec<Vec<String>> = subs.iter().map(|s| names(&a, s)).collect();
        // Down-sets of the chain θ < t < z below the incomparable x, y.
        assert_eq!(
            got,
            vec![
                vec!["θ"],
                vec!["θ", "t"],
                vec!["θ", "z", "t"],
                vec!["θ", "x", "z", "t"],
                vec!["θ", "y", "z", "t"],
                vec!["θ", "x", "y", "z", "t"],
            ]
        );
        // every enumerated set is closed
        for s in &subs {
            assert!(a.subact(s.members().iter().copied()).is_ok());
        }
    }

    #[test]
    fn subacts_of_discrete_act() {
        let m = Arc::new(catalog::trivial());
        let act = Act::from_fn(m, vec!["a".into(), "b".into()], None, |_, a| a).unwrap();
        let subs = act.enumerate_subacts(&Bounds::default()).unwrap();
        let got: Vec<&[usize]> = subs.iter().map(|s| s.members()).collect();
        assert_eq!(got, vec![&[][..], &[0], &[1], &[0, 1]]);
        let tiny = Bounds {
            max_subacts: 1,
            ..Bounds::default()
        };
        assert!(matches!(
            act.enumerate_subacts(&tiny),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn maximal_subacts_worked_example() {
        let a = catalog::worked_example_act();
        let max: Vec<Vec<String>> = a.maximal_subacts().iter().map(|s| names(&a, s)).collect();
        assert_eq!(
            max,
            vec![vec!["θ", "x", "z", "t"], vec!["θ", "y", "z", "t"]]
        );

        let sx = a.generated_subact(idx(&a, &["x"]));
        let (cyclic, _) = a.restrict(&sx);
        let max: Vec<Vec<String>> = cyclic
            .maximal_subacts()
            .iter()
            .map(|s| names(&cyclic, s))
            .collect();
        assert_eq!(max, vec![vec!["θ", "z", "t"]]);

        let point = Act::initial(a.monoid().clone(), true).unwrap();
        assert!(point.maximal_subacts().is_empty());
    }

    #[test]
    fn subact_rejects_open_sets() {
        let a = catalog::worked_example_act();
        assert_eq!(a.subact(idx(&a, &["θ", "x"])), Err(Error::NotSubact));
        assert_eq!(a.subact(idx(&a, &["t"])), Err(Error::NotSubact));
    }
}
