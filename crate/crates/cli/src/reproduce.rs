//! The worked example over `{0, 1, s, s²}`: every flag recomputed and
//! compared with a stored expectation file.

use std::path::Path;

use serde_json::{json, Map, Value};

use monact::catalog;
use monact::classify::{
    is_autoconnected, is_connected, is_cyclic, is_hollow, is_projective,
    non_autoconnected_witness_structured,
};
use monact::constructions::{psi_map, rees_factor};
use monact::enumerate::canonical_key;
use monact::{decompose, enumerate_homs, is_indecomposable, Bounds};

use crate::load::{labels, pairs, parse, read_text, CliError};

const BUILT_IN: &str = include_str!("../golden/worked_example.json");

/// Observed values, keyed like the expectation file, plus supporting detail.
pub fn observe(bounds: &Bounds) -> Result<(Map<String, Value>, Value), CliError> {
    let a = catalog::worked_example_act();
    let l = |x: &str| a.index_of(x).expect("label of the worked example");
    let mut obs = Map::new();

    obs.insert("indecomposable".into(), json!(is_indecomposable(&a)));

    let hollowness = is_hollow(&a);
    obs.insert("hollow".into(), json!(hollowness.hollow));
    let mut pair: Vec<Vec<String>> = hollowness
        .witness
        .iter()
        .flat_map(|(b1, b2)| [labels(&a, b1.members()), labels(&a, b2.members())])
        .collect();
    pair.sort();
    obs.insert("hollow_witness".into(), json!(pair));

    obs.insert("connected".into(), json!(is_connected(&a)?));

    let auto = is_autoconnected(&a, bounds)?;
    obs.insert("autoconnected".into(), json!(auto.autoconnected));
    let both_nonzero = auto.witness.as_ref().is_some_and(|g| {
        auto.square
            .projections
            .iter()
            .all(|pi| (0..a.len()).any(|x| Some(pi.apply(g.apply(x))) != pi.target().base_point()))
    });
    obs.insert("witness_projections_nonzero".into(), json!(both_nonzero));

    obs.insert("cyclic".into(), json!(is_cyclic(&a).is_some()));
    obs.insert("projective".into(), json!(is_projective(&a, bounds)?));

    let z = a.generated_subact([l("z")]);
    let (q, _, _) = rees_factor(&a, &z)?;
    let parts = decompose(&q)?.part_acts();
    obs.insert("quotient_parts".into(), json!(parts.len()));
    let keys = parts
        .iter()
        .map(|p| canonical_key(p, bounds))
        .collect::<Result<Vec<_>, _>>()?;
    obs.insert(
        "quotient_parts_isomorphic".into(),
        json!(keys.windows(2).all(|w| w[0] == w[1])),
    );
    let (t, _) = a.restrict(&a.generated_subact([l("t")]));
    let mut onto = true;
    for p in &parts {
        onto &= enumerate_homs(p, &t, bounds)?.iter().any(|h| h.kind().epi);
    }
    obs.insert("quotient_parts_onto_t".into(), json!(onto));

    let psi = psi_map(&a, &[a.clone(), a.clone()], bounds)?;
    obs.insert("psi_self_square_surjective".into(), json!(psi.surjective));

    let structured = non_autoconnected_witness_structured(&a, bounds)?;
    let detail = json!({
        "autoconnected_witness": auto.witness.as_ref().map(pairs),
        "structured_witness": structured.map(|w| json!({
            "b1": labels(&a, w.b1.members()),
            "b2": labels(&a, w.b2.members()),
            "f": pairs(&w.f),
        })),
        "quotient": q.labels(),
        "quotient_parts": parts.iter().map(|p| p.labels().to_vec()).collect::<Vec<_>>(),
    });
    Ok((obs, detail))
}

pub fn run(expected: Option<&Path>, bounds: &Bounds) -> Result<Value, CliError> {
    let expected: Map<String, Value> = match expected {
        Some(path) => parse(path, &read_text(path)?)?,
        None => serde_json::from_str(BUILT_IN).expect("built-in expectations parse"),
    };
    let (observed, detail) = observe(bounds)?;
    let mut all = true;
    let checks: Vec<Value> = expected
        .iter()
        .map(|(name, want)| {
            let got = observed.get(name).cloned().unwrap_or(Value::Null);
            let ok = &got == want;
            all &= ok;
            json!({"name": name, "expected": want, "observed": got, "ok": ok})
        })
        .collect();
    let out = json!({"all_match": all, "checks": checks, "detail": detail});
    if all {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}
