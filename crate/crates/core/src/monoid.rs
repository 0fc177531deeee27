//! Finite monoids given by multiplication tables.
//!
//! Elements are addressed by dense indices `0..n`; labels only matter at the
//! JSON boundary.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated finite monoid.
///
/// `table[i * n + j]` is the index of `elements[i] · elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    zero: Option<usize>,
}

/// The human-editable JSON form of a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub elements: Vec<String>,
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    pub table: Vec<Vec<String>>,
}

impl Monoid {
    /// Validates an index table. A declared zero is checked; an undeclared
    /// one is searched for, so [`Monoid::zero`] reports it either way.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        zero: Option<usize>,
    ) -> Result<Monoid> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Shape("a monoid has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("table must be {n}x{n}")));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        if identity >= n {
            return Err(Error::Shape(format!(
                "identity index {identity} out of range"
            )));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::Shape(format!("table entry {bad} out of range")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        for i in 0..n {
            if flat[identity * n + i] != i || flat[i * n + identity] != i {
                return Err(Error::BadIdentity(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = flat[i * n + j];
                for k in 0..n {
                    if flat[ij * n + k] != flat[i * n + flat[j * n + k]] {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let mut monoid = Monoid {
            labels,
            table: flat,
            identity,
            zero: None,
        };
        monoid.zero = match zero {
            Some(z) => {
                if z >= n {
                    return Err(Error::Shape(format!("zero index {z} out of range")));
                }
                if let Some(i) = (0..n).find(|&i| monoid.mul(z, i) != z || monoid.mul(i, z) != z) {
                    return Err(Error::BadZero(i));
                }
                Some(z)
            }
            None => find_zero(&monoid),
        };
        Ok(monoid)
    }

    /// Builds from labels; every cell must name a declared element.
    pub fn from_spec(spec: &MonoidSpec) -> Result<Monoid> {
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
        let table = spec
            .table
            .iter()
            .map(|row| row.iter().map(|l| lookup(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let identity = lookup(&spec.identity)?;
        let zero = spec.zero.as_deref().map(lookup).transpose()?;
        Monoid::new(spec.elements.clone(), table, identity, zero)
    }

    pub fn to_spec(&self) -> MonoidSpec {
        let n = self.len();
        MonoidSpec {
            elements: self.labels.clone(),
            identity: self.labels[self.identity].clone(),
            zero: self.zero.map(|z| self.labels[z].clone()),
            table: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.labels[self.mul(i, j)].clone())
                        .collect()
                })
                .collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; a monoid contains its identity.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.labels.len() + j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All `e` with `e·e = e`, ascending.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// True iff every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).any(|b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
        })
    }

    /// A small set of non-identity elements generating the monoid, chosen
    /// greedily by how much each one reaches, together with a word for every
    /// element.
    ///
    /// `words[x]` is `Some((p, g))` with `x = p · gens[g]`, or `None` for the
    /// identity. Following parents always terminates at the identity.
    pub fn generators(&self) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let n = self.len();
        let mut gens: Vec<usize> = Vec::new();
        loop {
            let words = self.words(&gens);
            let reached = |w: &[Option<(usize, usize)>]| {
                (0..n)
                    .filter(|&x| x == self.identity || w[x].is_some())
                    .count()
            };
            let current = reached(&words);
            if current == n {
                return (gens, words);
            }
            // the missing element that reaches the most, least index on ties
            let best = (0..n)
                .filter(|&x| x != self.identity && words[x].is_none())
                .max_by_key(|&x| {
                    let mut trial = gens.clone();
                    trial.push(x);
                    (reached(&self.words(&trial)), std::cmp::Reverse(x))
                })
                .expect("some element is missing");
            gens.push(best);
        }
    }

    // Breadth-first words over `gens`; unreachable elements stay `None`.
    fn words(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let n = self.len();
        let mut words = vec![None; n];
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(p) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let x = self.mul(p, g);
                if !reached[x] {
                    reached[x] = true;
                    words[x] = Some((p, gi));
                    queue.push_back(x);
                }
            }
        }
        words
    }

    /// The same monoid with its elements renumbered: new index `perm[i]`
    /// holds old element `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Monoid> {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            for j in 0..n {
                table[perm[i]][perm[j]] = perm[self.mul(i, j)];
            }
        }
        Monoid::new(
            labels,
            table,
            perm[self.identity],
            self.zero.map(|z| perm[z]),
        )
    }
}

/// The unique two-sided zero, if any. For the one-element monoid this is the
/// identity.
pub fn find_zero(m: &Monoid) -> Option<usize> {
    let n = m.len();
    (0..n).find(|&z| (0..n).all(|x| m.mul(z, x) == z && m.mul(x, z) == z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn spec(elements: &[&str], identity: &str, rows: &[&[&str]]) -> MonoidSpec {
        MonoidSpec {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            identity: identity.into(),
            zero: None,
            table: rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn trivial_monoid() {
        let m = Monoid::from_spec(&spec(&["1"], "1", &[&["1"]])).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(find_zero(&m), Some(0));
        assert_eq!(m.zero(), Some(m.identity()));
        assert_eq!(m.idempotents(), vec![0]);
        assert!(m.is_group());
    }

    #[test]
    fn truncated_powers_table() {
        let m = catalog::truncated_powers();
        let z = m.index_of("0").unwrap();
        let s = m.index_of("s").unwrap();
        let s2 = m.index_of("s^2").unwrap();
        assert_eq!(m.zero(), Some(z));
        assert_eq!(m.mul(s, s), s2);
        assert_eq!(m.mul(s, s2), z);
        let idem: Vec<&str> = m.idempotents().iter().map(|&e| m.label(e)).collect();
        assert_eq!(idem, vec!["0", "1"]);
        assert!(!m.is_group());
    }

    #[test]
    fn mod_six() {
        let m = catalog::multiplicative_mod(6);
        assert_eq!(m.zero().map(|z| m.label(z)), Some("0"));
        let idem: Vec<&str> = m.idempotents().iter().map(|&e| m.label(e)).collect();
        // e^2 = e mod 6 by hand: 0, 1, 3 (9), 4 (16)
        assert_eq!(idem, vec!["0", "1", "3", "4"]);
        assert!(!m.is_group());
    }

    #[test]
    fn groups() {
        assert!(catalog::cyclic_group(2).is_group());
        assert!(catalog::cyclic_group(3).is_group());
        assert_eq!(catalog::cyclic_group(3).zero(), None);
    }

    #[test]
    fn identity_violation() {
        let bad = spec(
            &["0", "1", "s"],
            "1",
            &[&["0", "0", "0"], &["0", "1", "0"], &["0", "s", "1"]],
        );
        assert_eq!(Monoid::from_spec(&bad), Err(Error::BadIdentity(2)));
    }

    #[test]
    fn associativity_violation() {
        // a·a = b, b·a = a, a·b = 1: (a·a)·b = b·b but a·(a·b) = a
        let bad = spec(
            &["1", "a", "b"],
            "1",
            &[&["1", "a", "b"], &["a", "b", "1"], &["b", "a", "b"]],
        );
        assert!(matches!(
            Monoid::from_spec(&bad),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn label_errors() {
        let dup = spec(&["1", "1"], "1", &[&["1", "1"], &["1", "1"]]);
        assert_eq!(
            Monoid::from_spec(&dup),
            Err(Error::DuplicateLabel("1".into()))
        );
        let unknown = spec(&["1"], "1", &[&["q"]]);
        assert_eq!(
            Monoid::from_spec(&unknown),
            Err(Error::UnknownLabel("q".into()))
        );
        let ragged = spec(&["1", "a"], "1", &[&["1", "a"]]);
        assert!(matches!(Monoid::from_spec(&ragged), Err(Error::Shape(_))));
    }

    #[test]
    fn declared_zero_checked() {
        let mut s = catalog::truncated_powers().to_spec();
        s.zero = Some("s^2".into());
        assert!(matches!(Monoid::from_spec(&s), Err(Error::BadZero(_))));
    }

    #[test]
    fn generators_cover() {
        for m in [
            catalog::truncated_powers(),
            catalog::multiplicative_mod(6),
            catalog::cyclic_group(3),
            catalog::trivial(),
        ] {
            let (gens, words) = m.generators();
            assert!(!gens.contains(&m.identity()));
            for (x, w) in words.iter().enumerate() {
                if x == m.identity() {
                    assert!(w.is_none());
                } else {
                    let (p, g) = w.unwrap();
                    assert_eq!(m.mul(p, gens[g]), x);
                }
            }
        }
        assert_eq!(catalog::truncated_powers().generators().0.len(), 1);
    }
}
