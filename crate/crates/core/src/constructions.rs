//! Coproducts, quotients, pullbacks and the comparison map `Ψ`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::act::{Act, SubAct};
use crate::bounds::Bounds;
use crate::error::{check_bound, Error, Result};
use crate::hom::{enumerate_homs, ActHom};
use crate::monoid::Monoid;

/// A coproduct with its structural injections, and in the pointed case the
/// canonical projections onto each summand.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub summands: Vec<Act>,
    pub total: Act,
    pub injections: Vec<ActHom>,
    /// Empty for plain acts.
    pub projections: Vec<ActHom>,
}

/// Disjoint union (plain) or disjoint union with base points glued
/// (pointed). Element `a` of summand `i` is labelled `"{i+1}:{a}"`; the
/// glued base point comes first and is labelled `θ`.
pub fn coproduct(monoid: &Arc<Monoid>, summands: &[Act], pointed: bool) -> Result<Coproduct> {
    for a in summands {
        if a.monoid() != monoid {
            return Err(Error::MixedMonoids);
        }
        if a.is_pointed() != pointed {
            return Err(Error::MixedPointedness);
        }
    }
    if pointed && monoid.zero().is_none() {
        return Err(Error::PointedNeedsZero);
    }
    let mut labels: Vec<String> = Vec::new();
    if pointed {
        labels.push("θ".into());
    }
    // position[i][a] = index of ν_i(a) in the total carrier
    let mut position: Vec<Vec<usize>> = Vec::with_capacity(summands.len());
    for (i, a) in summands.iter().enumerate() {
        let mut pos = Vec::with_capacity(a.len());
        for e in 0..a.len() {
            if a.is_trivial_element(e) {
                pos.push(0);
            } else {
                pos.push(labels.len());
                labels.push(format!("{}:{}", i + 1, a.label(e)));
            }
        }
        position.push(pos);
    }
    let total_len = labels.len();
    let n = monoid.len();
    let mut action = vec![0; n * total_len];
    for (i, a) in summands.iter().enumerate() {
        for s in 0..n {
            for e in 0..a.len() {
                action[s * total_len + position[i][e]] = position[i][a.act(s, e)];
            }
        }
    }
    // the glued base point is fixed; already zero-filled
    let total = Act::from_parts(
        monoid.clone(),
        labels,
        action,
        if pointed { Some(0) } else { None },
    );
    let injections = summands
        .iter()
        .zip(&position)
        .map(|(a, pos)| ActHom::from_parts(a.clone(), total.clone(), pos.clone()))
        .collect();
    let projections = if pointed {
        summands
            .iter()
            .zip(&position)
            .map(|(a, pos)| {
                let theta = a.base_point().expect("pointed summand");
                let mut map = vec![theta; total_len];
                for (e, &p) in pos.iter().enumerate() {
                    map[p] = e;
                }
                ActHom::from_parts(total.clone(), a.clone(), map)
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(Coproduct {
        summands: summands.to_vec(),
        total,
        injections,
        projections,
    })
}

impl Coproduct {
    /// The unique `h: ⊔A_i → T` with `h ∘ ν_i = legs[i]`.
    pub fn copair(&self, legs: &[ActHom]) -> Result<ActHom> {
        if legs.len() != self.summands.len() {
            return Err(Error::Shape("one leg per summand".into()));
        }
        let target = match legs.first() {
            Some(l) => l.target().clone(),
            None => {
                return Err(Error::Shape(
                    "copairing of an empty family needs a target".into(),
                ))
            }
        };
        let theta = target.base_point();
        let mut map = vec![theta.unwrap_or(usize::MAX); self.total.len()];
        for (leg, nu) in legs.iter().zip(&self.injections) {
            if leg.target() != &target {
                return Err(Error::MixedCodomain);
            }
            if leg.source() != nu.source() {
                return Err(Error::MixedMonoids);
            }
            for (e, &p) in nu.map().iter().enumerate() {
                map[p] = leg.apply(e);
            }
        }
        ActHom::new(self.total.clone(), target, map)
    }
}

/// A compatible equivalence on the carrier of an act, stored as a
/// restricted growth string: `blocks[a]` is the block of `a`, blocks are
/// numbered in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Normalizes any block labelling and checks compatibility.
    pub fn new(act: &Act, labelling: &[usize]) -> Result<Congruence> {
        if labelling.len() != act.len() {
            return Err(Error::Shape("one block per element".into()));
        }
        let c = Congruence {
            blocks: normalize(labelling),
        };
        if !c.is_compatible(act) {
            return Err(Error::IncompatiblePartition);
        }
        Ok(c)
    }

    pub fn discrete(act: &Act) -> Congruence {
        Congruence {
            blocks: (0..act.len()).collect(),
        }
    }

    pub fn total(act: &Act) -> Congruence {
        Congruence {
            blocks: vec![0; act.len()],
        }
    }

    /// Collapses `sub` to a single block.
    pub fn rees(act: &Act, sub: &SubAct) -> Congruence {
        let labelling: Vec<usize> = (0..act.len())
            .map(|a| if sub.contains(a) { usize::MAX } else { a })
            .collect();
        Congruence {
            blocks: normalize(&labelling),
        }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |&b| b + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    /// Members of each block, blocks in order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.block_count()];
        for (a, &b) in self.blocks.iter().enumerate() {
            classes[b].push(a);
        }
        classes
    }

    fn is_compatible(&self, act: &Act) -> bool {
        let classes = self.classes();
        classes.iter().all(|class| {
            let rep = class[0];
            (0..act.monoid().len()).all(|s| {
                let target = self.blocks[act.act(s, rep)];
                class[1..]
                    .iter()
                    .all(|&a| self.blocks[act.act(s, a)] == target)
            })
        })
    }
}

fn normalize(labelling: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labelling
        .iter()
        .map(|l| match seen.iter().position(|x| x == l) {
            Some(b) => b,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

/// The quotient act on blocks with its canonical projection. Singleton
/// blocks keep their element's label; larger blocks are labelled `{a,b,…}`.
pub fn quotient(act: &Act, c: &Congruence) -> Result<(Act, ActHom)> {
    if c.blocks.len() != act.len() || !c.is_compatible(act) {
        return Err(Error::IncompatiblePartition);
    }
    let classes = c.classes();
    let labels: Vec<String> = classes
        .iter()
        .map(|class| match class.as_slice() {
            [single] => act.label(*single).to_string(),
            _ => {
                let inner: Vec<&str> = class.iter().map(|&a| act.label(a)).collect();
                format!("{{{}}}", inner.join(","))
            }
        })
        .collect();
    let k = classes.len();
    let n = act.monoid().len();
    let mut action = Vec::with_capacity(n * k);
    for s in 0..n {
        for class in &classes {
            action.push(c.blocks[act.act(s, class[0])]);
        }
    }
    let base = act.base_point().map(|t| c.blocks[t]);
    let q = Act::from_parts(act.monoid().clone(), labels, action, base);
    let projection = ActHom::from_parts(act.clone(), q.clone(), c.blocks.clone());
    Ok((q, projection))
}

/// `A/B`: the subact `B` collapsed to the base point.
pub fn rees_factor(act: &Act, sub: &SubAct) -> Result<(Act, ActHom, Congruence)> {
    if !act.is_pointed() {
        return Err(Error::NotPointed);
    }
    act.subact(sub.members().iter().copied())?;
    let c = Congruence::rees(act, sub);
    let (q, p) = quotient(act, &c)?;
    Ok((q, p, c))
}

/// Every congruence, in restricted-growth-string order.
pub fn enumerate_congruences(act: &Act, bounds: &Bounds) -> Result<Vec<Congruence>> {
    check_bound("congruence carrier", act.len(), bounds.max_congruences)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; act.len()];
    fill_rgs(act, &mut rgs, 0, 0, &mut out);
    Ok(out)
}

fn fill_rgs(act: &Act, rgs: &mut [usize], i: usize, used: usize, out: &mut Vec<Congruence>) {
    if i == rgs.len() {
        let c = Congruence {
            blocks: rgs.to_vec(),
        };
        if c.is_compatible(act) {
            out.push(c);
        }
        return;
    }
    for b in 0..=used {
        rgs[i] = b;
        if consistent_prefix(act, rgs, i) {
            fill_rgs(act, rgs, i + 1, used.max(b + 1), out);
        }
    }
}

// Pairs inside the decided prefix whose images are also decided must agree.
fn consistent_prefix(act: &Act, rgs: &[usize], i: usize) -> bool {
    (0..i).filter(|&j| rgs[j] == rgs[i]).all(|j| {
        (0..act.monoid().len()).all(|s| {
            let (x, y) = (act.act(s, i), act.act(s, j));
            x > i || y > i || rgs[x] == rgs[y]
        })
    })
}

/// A pullback square over a common codomain.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub act: Act,
    pub left: ActHom,
    pub right: ActHom,
}

/// `{(a, b) : f(a) = g(b)}` with componentwise action, ordered
/// lexicographically.
pub fn pullback(f: &ActHom, g: &ActHom) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::MixedCodomain);
    }
    let (a, b) = (f.source(), g.source());
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| f.apply(x) == g.apply(y))
        .collect();
    let index = |p: (usize, usize)| pairs.binary_search(&p).expect("pullback is closed");
    let n = a.monoid().len();
    let mut action = Vec::with_capacity(n * pairs.len());
    for s in 0..n {
        for &(x, y) in &pairs {
            action.push(index((a.act(s, x), b.act(s, y))));
        }
    }
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.label(x), b.label(y)))
        .collect();
    let base = match (a.base_point(), b.base_point()) {
        (Some(s), Some(t)) => Some(index((s, t))),
        _ => None,
    };
    let act = Act::from_parts(a.monoid().clone(), labels, action, base);
    let left = ActHom::from_parts(act.clone(), a.clone(), pairs.iter().map(|p| p.0).collect());
    let right = ActHom::from_parts(act.clone(), b.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { act, left, right })
}

/// One element `α ∈ Hom(C, A_i)` of the domain of `Ψ` with its image `ν_i∘α`.
#[derive(Debug, Clone)]
pub struct PsiEntry {
    pub summand: usize,
    pub hom: ActHom,
    pub composed: ActHom,
}

/// The comparison map `⨆ Hom(C, A_i) → Hom(C, ⊔A_i)`, `α ↦ ν_i∘α`.
#[derive(Debug, Clone)]
pub struct PsiMap {
    pub coproduct: Coproduct,
    pub entries: Vec<PsiEntry>,
    pub codomain: Vec<ActHom>,
    pub injective: bool,
    pub surjective: bool,
}

pub fn psi_map(c: &Act, summands: &[Act], bounds: &Bounds) -> Result<PsiMap> {
    let sum = coproduct(c.monoid(), summands, c.is_pointed())?;
    let mut entries = Vec::new();
    for (i, (a, nu)) in summands.iter().zip(&sum.injections).enumerate() {
        for hom in enumerate_homs(c, a, bounds)? {
            let composed = nu.after(&hom)?;
            entries.push(PsiEntry {
                summand: i,
                hom,
                composed,
            });
        }
    }
    let codomain = enumerate_homs(c, &sum.total, bounds)?;
    let images: BTreeSet<&[usize]> = entries.iter().map(|e| e.composed.map()).collect();
    let injective = images.len() == entries.len();
    let surjective = codomain.iter().all(|h| images.contains(h.map()));
    Ok(PsiMap {
        coproduct: sum,
        entries,
        codomain,
        injective,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::hom::are_isomorphic;

    fn z_subact(a: &Act) -> SubAct {
        a.generated_subact([a.index_of("z").unwrap()])
    }

    #[test]
    fn empty_coproducts_are_initial() {
        let m = Arc::new(catalog::truncated_powers());
        let plain = coproduct(&m, &[], false).unwrap();
        assert!(plain.total.is_empty());
        let pointed = coproduct(&m, &[], true).unwrap();
        assert!(pointed.total.is_initial() && pointed.total.is_pointed());
    }

    #[test]
    fn pointed_square_has_nine_elements() {
        let a = catalog::worked_example_act();
        let sum = coproduct(a.monoid(), &[a.clone(), a.clone()], true).unwrap();
        assert_eq!(sum.total.len(), 9);
        assert_eq!(sum.total.label(0), "θ");
        assert_eq!(sum.total.label(1), "1:x");
        // the construction is a genuine act
        Act::new(
            a.monoid().clone(),
            sum.total.labels().to_vec(),
            (0..a.monoid().len())
                .map(|s| (0..9).map(|e| sum.total.act(s, e)).collect())
                .collect(),
            Some(0),
        )
        .unwrap();
        for (i, p) in sum.projections.iter().enumerate() {
            for (j, nu) in sum.injections.iter().enumerate() {
                let composite = p.after(nu).unwrap();
                if i == j {
                    assert_eq!(composite, ActHom::identity(&a));
                } else {
                    assert_eq!(composite, ActHom::zero(&a, &a).unwrap());
                }
            }
        }
    }

    #[test]
    fn coproduct_errors() {
        let a = catalog::worked_example_act();
        let m6 = Arc::new(catalog::multiplicative_mod(6));
        assert_eq!(
            coproduct(&m6, std::slice::from_ref(&a), true).unwrap_err(),
            Error::MixedMonoids
        );
        assert_eq!(
            coproduct(a.monoid(), &[a.clone(), a.forget_base_point()], true).unwrap_err(),
            Error::MixedPointedness
        );
    }

    #[test]
    fn rees_factor_by_z() {
        let a = catalog::worked_example_act();
        let (q, p, c) = rees_factor(&a, &z_subact(&a)).unwrap();
        assert_eq!(q.labels(), &["{θ,z,t}", "x", "y"]);
        assert_eq!(q.base_point(), Some(0));
        let s = a.monoid().index_of("s").unwrap();
        assert_eq!(q.act(s, 1), 0);
        assert_eq!(q.act(s, 2), 0);
        assert!(p.kind().epi && !p.kind().mono);
        assert_eq!(p.image(), q.full_subact());
        // the general quotient agrees
        let (q2, _) = quotient(&a, &c).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn trivial_rees_factors() {
        let a = catalog::worked_example_act();
        let (q, _, _) = rees_factor(&a, &a.trivial_subact()).unwrap();
        assert!(are_isomorphic(&q, &a).is_some());
        let (q, _, _) = rees_factor(&a, &a.full_subact()).unwrap();
        assert!(q.is_initial());
        assert_eq!(
            rees_factor(&a.forget_base_point(), &a.full_subact()).unwrap_err(),
            Error::NotPointed
        );
        let bad = SubAct::from_sorted(vec![0, 1]);
        assert_eq!(rees_factor(&a, &bad).unwrap_err(), Error::NotSubact);
    }

    #[test]
    fn discrete_and_total_quotients() {
        let a = catalog::worked_example_act();
        let (d, _) = quotient(&a, &Congruence::discrete(&a)).unwrap();
        assert!(are_isomorphic(&d, &a).is_some());
        let (t, _) = quotient(&a, &Congruence::total(&a)).unwrap();
        assert_eq!(t.len(), 1);
        // x ~ z alone is not compatible: s·x = z but s·z = t
        assert_eq!(
            Congruence::new(&a, &[0, 1, 2, 1, 4]).unwrap_err(),
            Error::IncompatiblePartition
        );
    }

    #[test]
    fn congruence_counts() {
        let m = Arc::new(catalog::truncated_powers());
        let one = Act::initial(m.clone(), true).unwrap();
        assert_eq!(
            enumerate_congruences(&one, &Bounds::default())
                .unwrap()
                .len(),
            1
        );
        let m01 = Arc::new(catalog::with_adjoined_zero(&catalog::trivial()));
        let fixed = Act::from_fn(m01, vec!["θ".into(), "a".into()], Some(0), |s, a| {
            if s == 0 {
                0
            } else {
                a
            }
        })
        .unwrap();
        assert_eq!(
            enumerate_congruences(&fixed, &Bounds::default())
                .unwrap()
                .len(),
            2
        );
        let s_kills = Act::from_fn(m, vec!["θ".into(), "a".into()], Some(0), |s, a| {
            if s == 1 {
                a
            } else {
                0
            }
        })
        .unwrap();
        assert_eq!(
            enumerate_congruences(&s_kills, &Bounds::default())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn congruences_match_brute_force() {
        let a = catalog::worked_example_act();
        let found = enumerate_congruences(&a, &Bounds::default()).unwrap();
        // all 52 set partitions of 5 points, filtered independently
        let mut brute = Vec::new();
        let mut labelling = vec![0usize; 5];
        loop {
            let ok = (0..5).all(|x| {
                (0..5).all(|y| {
                    labelling[x] != labelling[y]
                        || (0..4).all(|s| labelling[a.act(s, x)] == labelling[a.act(s, y)])
                })
            });
            if ok {
                brute.push(Congruence::new(&a, &labelling).unwrap());
            }
            // odometer over 5^5 labellings, deduplicated by normalization
            let mut i = 0;
            while i < 5 {
                labelling[i] += 1;
                if labelling[i] < 5 {
                    break;
                }
                labelling[i] = 0;
                i += 1;
            }
            if i == 5 {
                break;
            }
        }
        brute.sort();
        brute.dedup();
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, brute);
        assert_eq!(found, sorted, "enumeration is already in RGS order");
        let rees = Congruence::rees(&a, &z_subact(&a));
        assert!(found.contains(&rees));
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let a = catalog::worked_example_act();
        let id = ActHom::identity(&a);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.act.len(), a.len());
        assert!(are_isomorphic(&pb.act, &a).is_some());
    }

    #[test]
    fn pullback_of_inclusions_is_intersection() {
        let a = catalog::worked_example_act();
        let sx = a.generated_subact([a.index_of("x").unwrap()]);
        let sy = a.generated_subact([a.index_of("y").unwrap()]);
        let (bx, ix) = a.restrict(&sx);
        let (by, iy) = a.restrict(&sy);
        let pb = pullback(&ix, &iy).unwrap();
        let (meet, _) = a.restrict(&sx.intersection(&sy));
        assert!(are_isomorphic(&pb.act, &meet).is_some());
        assert_eq!(pb.left.target(), &bx);
        assert_eq!(pb.right.target(), &by);
        assert_eq!(
            pullback(&ix, &ActHom::identity(&bx)).unwrap_err(),
            Error::MixedCodomain
        );
    }

    #[test]
    fn psi_on_worked_example() {
        let a = catalog::worked_example_act();
        let psi = psi_map(&a, &[a.clone(), a.clone()], &Bounds::default()).unwrap();
        assert!(!psi.surjective);
        let crossing = [0usize, 4, 8, 0, 0];
        assert!(psi.codomain.iter().any(|h| h.map() == crossing));
        assert!(psi.entries.iter().all(|e| e.composed.map() != crossing));
    }

    #[test]
    fn psi_glues_zero_morphisms() {
        let m = Arc::new(catalog::truncated_powers());
        let point = Act::initial(m, true).unwrap();
        let psi = psi_map(&point, &[point.clone(), point.clone()], &Bounds::default()).unwrap();
        assert_eq!(psi.entries.len(), 2);
        assert_eq!(psi.codomain.len(), 1);
        assert!(!psi.injective);
        assert!(psi.surjective);
    }

    #[test]
    fn copair_recovers_identity() {
        let a = catalog::worked_example_act();
        let (q, _, _) = rees_factor(&a, &z_subact(&a)).unwrap();
        let sum = coproduct(a.monoid(), &[a.clone(), q.clone()], true).unwrap();
        let h = sum
            .copair(&[ActHom::identity(&a), ActHom::zero(&q, &a).unwrap()])
            .unwrap();
        assert_eq!(h.after(&sum.injections[0]).unwrap(), ActHom::identity(&a));
    }
}
