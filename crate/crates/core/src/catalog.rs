//! Standard monoids and the worked example used throughout the tests.

use std::sync::Arc;

use crate::act::Act;
use crate::monoid::Monoid;

fn build(labels: Vec<String>, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Monoid {
    let n = labels.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| mul(i, j)).collect())
        .collect();
    Monoid::new(labels, table, identity, None).expect("catalog monoid is valid")
}

/// The one-element monoid `{1}`.
pub fn trivial() -> Monoid {
    build(vec!["1".into()], 0, |_, _| 0)
}

/// `m` with a fresh zero `0` adjoined at index 0.
pub fn with_adjoined_zero(m: &Monoid) -> Monoid {
    let mut labels = vec!["0".to_string()];
    labels.extend(m.labels().iter().cloned());
    build(labels, m.identity() + 1, |i, j| {
        if i == 0 || j == 0 {
            0
        } else {
            m.mul(i - 1, j - 1) + 1
        }
    })
}

/// The cyclic group of order `n`, elements `e, g, g^2, ...`.
pub fn cyclic_group(n: usize) -> Monoid {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    build(labels, 0, |i, j| (i + j) % n)
}

/// `(ℤ_n, ·, 1)`, elements labelled `0..n-1`.
pub fn multiplicative_mod(n: usize) -> Monoid {
    assert!(n >= 2);
    let labels = (0..n).map(|k| k.to_string()).collect();
    build(labels, 1, |i, j| (i * j) % n)
}

/// `{0, 1, s, s^2}` with `s^3 = 0`: the powers of `s` in `ℤ[s]/(s^3)`.
pub fn truncated_powers() -> Monoid {
    // exponent 3 stands for the zero
    let labels = vec!["0".into(), "1".into(), "s".into(), "s^2".into()];
    let exponent = [3usize, 0, 1, 2];
    let from_exponent = |e: usize| match e.min(3) {
        3 => 0,
        0 => 1,
        1 => 2,
        _ => 3,
    };
    build(labels, 1, |i, j| from_exponent(exponent[i] + exponent[j]))
}

/// The pointed act `{θ, x, y, z, t}` over [`truncated_powers`] with
/// `s·x = s·y = z`, `s·z = t`, `s·t = θ`.
///
/// It is indecomposable, yet neither hollow nor autoconnected.
pub fn worked_example_act() -> Act {
    let m = Arc::new(truncated_powers());
    let labels: Vec<String> = ["θ", "x", "y", "z", "t"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // depth below θ: θ=0, t=1, z=2, x=y=3; s lowers depth by one
    let s_image = [0usize, 3, 3, 4, 0];
    let power = |s: usize| match s {
        0 => usize::MAX,
        1 => 0,
        2 => 1,
        _ => 2,
    };
    Act::from_fn(m, labels, Some(0), |s, a| {
        let k = power(s);
        if k == usize::MAX {
            return 0;
        }
        (0..k).fold(a, |b, _| s_image[b])
    })
    .expect("worked example is a valid act")
}

/// The monoids every exhaustive sweep runs over.
pub fn test_monoids() -> Vec<(&'static str, Monoid)> {
    vec![
        ("trivial", trivial()),
        ("trivial+0", with_adjoined_zero(&trivial())),
        ("truncated_powers", truncated_powers()),
        ("Z6_mult", multiplicative_mod(6)),
    ]
}
