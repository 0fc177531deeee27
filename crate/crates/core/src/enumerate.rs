//! Exhaustive generation of acts up to isomorphism.
//!
//! An act is determined by the transformations of a generating set of the
//! monoid. The search fills those transformations cell by cell and, after
//! every cell, evaluates all monoid elements through their words to catch
//! any violated relation `T(x·g) = T(x)∘T(g)` as early as possible. Complete
//! tables are relabelled into canonical form and deduplicated by key.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::act::Act;
use crate::bounds::Bounds;
use crate::error::{check_bound, Error, Result};
use crate::monoid::Monoid;
use crate::par;

const UNSET: u8 = u8::MAX;

/// An act paired with its isomorphism-invariant key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActCanonicalForm {
    pub act: Act,
    pub canonical_key: Vec<u8>,
}

/// Permutations of `0..k`, fixing `0` when pointed.
fn permutations(k: usize, pointed: bool) -> Vec<Vec<u8>> {
    if pointed {
        if k == 0 {
            return vec![Vec::new()];
        }
        (1..k as u8)
            .permutations(k - 1)
            .map(|p| std::iter::once(0).chain(p).collect())
            .collect()
    } else {
        (0..k as u8).permutations(k).collect()
    }
}

/// Lexicographically least relabelling of a flat table `t[s*k + a]`.
/// Returns the key and the permutation `π` (new index of old `a` is
/// `π[a]`) that attains it.
fn minimize(table: &[u8], n: usize, k: usize, perms: &[Vec<u8>]) -> (Vec<u8>, Vec<u8>) {
    let mut best: Vec<u8> = Vec::new();
    let mut best_perm: Vec<u8> = Vec::new();
    let mut candidate = vec![0u8; n * k];
    let mut inverse = vec![0u8; k];
    for pi in perms {
        for (a, &p) in pi.iter().enumerate() {
            inverse[p as usize] = a as u8;
        }
        // candidate[s*k + i] = π(t[s*k + π⁻¹(i)])
        let mut state = std::cmp::Ordering::Equal;
        'fill: for s in 0..n {
            for i in 0..k {
                let v = pi[table[s * k + inverse[i] as usize] as usize];
                let pos = s * k + i;
                candidate[pos] = v;
                if state == std::cmp::Ordering::Equal && !best.is_empty() {
                    state = v.cmp(&best[pos]);
                    if state == std::cmp::Ordering::Greater {
                        break 'fill;
                    }
                }
            }
        }
        if best.is_empty() || state == std::cmp::Ordering::Less {
            best.clone_from(&candidate);
            best_perm.clone_from(pi);
        }
    }
    (best, best_perm)
}

fn key_prefix(k: usize, pointed: bool) -> [u8; 2] {
    [k as u8, u8::from(pointed)]
}

/// Minimal encoding of the action table over all relabellings of the
/// carrier (fixing the base point). Equal keys iff isomorphic, for acts over
/// the same monoid.
pub fn canonical_key(act: &Act, bounds: &Bounds) -> Result<Vec<u8>> {
    Ok(canonical_form(act, bounds)?.canonical_key)
}

/// The act relabelled into canonical position, with its key.
pub fn canonical_form(act: &Act, bounds: &Bounds) -> Result<ActCanonicalForm> {
    check_bound("canonical form carrier", act.len(), bounds.max_canonical)?;
    // Move the base point to 0 first so that the permutations fixing 0 suffice.
    let k = act.len();
    let pointed = act.is_pointed();
    let mut to_front: Vec<usize> = (0..k).collect();
    if let Some(t) = act.base_point() {
        to_front.swap(0, t);
    }
    let n = act.monoid().len();
    // front[i] = old element placed at i; since to_front is an involution,
    // the new index of old a is to_front[a].
    let table: Vec<u8> = (0..n)
        .flat_map(|s| (0..k).map(move |i| (s, i)))
        .map(|(s, i)| to_front[act.act(s, to_front[i])] as u8)
        .collect();
    let (body, perm) = minimize(&table, n, k, &permutations(k, pointed));
    let mut key = key_prefix(k, pointed).to_vec();
    key.extend_from_slice(&body);
    let mut labels = vec![String::new(); k];
    for a in 0..k {
        labels[perm[to_front[a]] as usize] = act.label(a).to_string();
    }
    let canonical = Act::from_parts(
        act.monoid().clone(),
        labels,
        body.iter().map(|&v| v as usize).collect(),
        if pointed { Some(0) } else { None },
    );
    Ok(ActCanonicalForm {
        act: canonical,
        canonical_key: key,
    })
}

fn element_labels(k: usize, pointed: bool) -> Vec<String> {
    let name = |i: usize| {
        let c = (b'a' + (i % 26) as u8) as char;
        if i < 26 {
            c.to_string()
        } else {
            format!("{c}{}", i / 26)
        }
    };
    if pointed {
        std::iter::once("θ".to_string())
            .chain((0..k.saturating_sub(1)).map(name))
            .collect()
    } else {
        (0..k).map(name).collect()
    }
}

struct Search<'a> {
    monoid: &'a Monoid,
    k: usize,
    n: usize,
    gens: Vec<usize>,
    // words[x] = (p, g) with x = p · gens[g]; in breadth-first order
    order: Vec<usize>,
    words: Vec<Option<(usize, usize)>>,
    // free cells (generator slot, element), in fill order
    cells: Vec<(usize, usize)>,
    zero: Option<usize>,
}

impl<'a> Search<'a> {
    fn new(monoid: &'a Monoid, k: usize, pointed: bool) -> Search<'a> {
        let (gens, words) = monoid.generators();
        let n = monoid.len();
        // breadth-first order: parents precede children
        let mut order = vec![monoid.identity()];
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for (x, w) in words.iter().enumerate() {
                if matches!(w, Some((q, _)) if *q == p) {
                    order.push(x);
                }
            }
            i += 1;
        }
        let zero = if pointed { monoid.zero() } else { None };
        let first = usize::from(pointed);
        let cells = (first..k)
            .flat_map(|a| (0..gens.len()).map(move |g| (g, a)))
            .filter(|&(g, _)| Some(gens[g]) != zero)
            .collect();
        Search {
            monoid,
            k,
            n,
            gens,
            order,
            words,
            cells,
            zero,
        }
    }

    fn initial_state(&self) -> Vec<u8> {
        let mut gen_table = vec![UNSET; self.gens.len() * self.k];
        if self.zero.is_some() {
            for g in 0..self.gens.len() {
                gen_table[g * self.k] = 0;
                if Some(self.gens[g]) == self.zero {
                    for a in 0..self.k {
                        gen_table[g * self.k + a] = 0;
                    }
                }
            }
        }
        gen_table
    }

    /// Full partial table of every monoid element, or `None` on a conflict.
    fn evaluate(&self, gen_table: &[u8]) -> Option<Vec<u8>> {
        let (n, k) = (self.n, self.k);
        let mut full = vec![UNSET; n * k];
        let one = self.monoid.identity();
        for a in 0..k {
            full[one * k + a] = a as u8;
        }
        for &x in &self.order[1..] {
            let (p, g) = self.words[x].expect("non-identity has a word");
            for a in 0..k {
                let b = gen_table[g * k + a];
                if b != UNSET {
                    full[x * k + a] = full[p * k + b as usize];
                }
            }
        }
        // relations: T(x·g)(a) = T(x)(T(g)(a))
        for x in 0..n {
            for (gi, &g) in self.gens.iter().enumerate() {
                let xg = self.monoid.mul(x, g);
                for a in 0..k {
                    let lhs = full[xg * k + a];
                    if lhs == UNSET {
                        continue;
                    }
                    let b = gen_table[gi * k + a];
                    if b == UNSET {
                        continue;
                    }
                    let rhs = full[x * k + b as usize];
                    if rhs != UNSET && rhs != lhs {
                        return None;
                    }
                }
            }
        }
        if let Some(z) = self.zero {
            if full[z * k..(z + 1) * k]
                .iter()
                .any(|&v| v != UNSET && v != 0)
            {
                return None;
            }
        }
        Some(full)
    }

    /// All consistent states with the first `depth` cells filled.
    fn frontier(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut layer = vec![self.initial_state()];
        if self.evaluate(&layer[0]).is_none() {
            return Vec::new();
        }
        for &(g, a) in self.cells.iter().take(depth) {
            layer = layer
                .into_iter()
                .flat_map(|state| {
                    (0..self.k as u8).filter_map(move |v| {
                        let mut next = state.clone();
                        next[g * self.k + a] = v;
                        self.evaluate(&next).map(|_| next)
                    })
                })
                .collect();
        }
        layer
    }

    fn complete(&self, state: &mut Vec<u8>, cell: usize, out: &mut Vec<Vec<u8>>) {
        if cell == self.cells.len() {
            if let Some(full) = self.evaluate(state) {
                debug_assert!(full.iter().all(|&v| v != UNSET));
                out.push(full);
            }
            return;
        }
        let (g, a) = self.cells[cell];
        for v in 0..self.k as u8 {
            state[g * self.k + a] = v;
            if self.evaluate(state).is_some() {
                self.complete(state, cell + 1, out);
            }
        }
        state[g * self.k + a] = UNSET;
    }
}

/// One representative per isomorphism class of acts of the given size, in
/// canonical-key order. Representatives are in canonical position with
/// labels `a, b, …` (and `θ` at index 0 when pointed).
pub fn enumerate_acts(
    monoid: &Arc<Monoid>,
    size: usize,
    pointed: bool,
    bounds: &Bounds,
) -> Result<Vec<Act>> {
    Ok(enumerate_forms(monoid, size, pointed, bounds)?
        .into_iter()
        .map(|f| f.act)
        .collect())
}

/// Like [`enumerate_acts`], keeping the keys.
pub fn enumerate_forms(
    monoid: &Arc<Monoid>,
    size: usize,
    pointed: bool,
    bounds: &Bounds,
) -> Result<Vec<ActCanonicalForm>> {
    check_bound("enumerated act size", size, bounds.max_size)?;
    check_bound("enumerated act size", size, bounds.max_canonical)?;
    if pointed && monoid.zero().is_none() {
        return Err(Error::PointedNeedsZero);
    }
    if pointed && size == 0 {
        return Ok(Vec::new());
    }
    let search = Search::new(monoid, size, pointed);
    let n = monoid.len();
    let perms = permutations(size, pointed);
    let prefix = key_prefix(size, pointed);
    let depth = search.cells.len().min(3);
    let frontier = search.frontier(depth);
    let keyed: Vec<(Vec<u8>, Vec<u8>)> = par::flat_map(&frontier, |start| {
        let mut tables = Vec::new();
        let mut state = start.clone();
        search.complete(&mut state, depth, &mut tables);
        let mut local: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
        for t in tables {
            let (body, _) = minimize(&t, n, size, &perms);
            local.entry(body.clone()).or_insert(body);
        }
        local.into_iter().collect()
    });
    let unique: BTreeMap<Vec<u8>, Vec<u8>> = keyed.into_iter().collect();
    let labels = element_labels(size, pointed);
    Ok(unique
        .into_values()
        .map(|body| {
            let mut key = prefix.to_vec();
            key.extend_from_slice(&body);
            ActCanonicalForm {
                act: Act::from_parts(
                    monoid.clone(),
                    labels.clone(),
                    body.iter().map(|&v| v as usize).collect(),
                    if pointed { Some(0) } else { None },
                ),
                canonical_key: key,
            }
        })
        .collect())
}

/// Every act of size `1..=max_size`, by size and then key.
pub fn enumerate_up_to(
    monoid: &Arc<Monoid>,
    max_size: usize,
    pointed: bool,
    bounds: &Bounds,
) -> Result<Vec<Act>> {
    let mut all = Vec::new();
    for size in 1..=max_size {
        all.extend(enumerate_acts(monoid, size, pointed, bounds)?);
    }
    Ok(all)
}
