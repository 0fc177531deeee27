use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use monact::classify::{check_steady_bounded, classify as classify_act};
use monact::constructions::psi_map;
use monact::enumerate::enumerate_acts;
use monact::io::act_to_spec;
use monact::{decompose as decompose_act, enumerate_homs, Act, Bounds};

use crate::load::{labels, pairs, read_act, read_monoid, write_text, CliError};

pub fn validate(monoid: Option<&Path>, act: Option<&Path>) -> Result<Value, CliError> {
    if let Some(path) = monoid {
        let m = read_monoid(path)?;
        let names = |xs: Vec<usize>| -> Vec<&str> { xs.into_iter().map(|x| m.label(x)).collect() };
        return Ok(json!({
            "valid": true,
            "kind": "monoid",
            "size": m.len(),
            "identity": m.label(m.identity()),
            "zero": m.zero().map(|z| m.label(z)),
            "idempotents": names(m.idempotents()),
            "group": m.is_group(),
        }));
    }
    let path = act.expect("clap requires one input");
    let a = read_act(path)?;
    Ok(json!({
        "valid": true,
        "kind": "act",
        "size": a.len(),
        "pointed": a.is_pointed(),
        "monoid_size": a.monoid().len(),
    }))
}

pub fn decompose(path: &Path) -> Result<Value, CliError> {
    let a = read_act(path)?;
    let d = decompose_act(&a)?;
    let parts: Vec<Vec<String>> = d.parts.iter().map(|p| labels(&a, p.members())).collect();
    Ok(json!({"count": parts.len(), "parts": parts}))
}

pub fn classify(path: &Path, bounds: &Bounds) -> Result<Value, CliError> {
    let a = read_act(path)?;
    let report = classify_act(&a, bounds)?;
    Ok(serde_json::to_value(report).expect("report serializes"))
}

pub fn homs(source: &Path, target: &Path, bounds: &Bounds) -> Result<Value, CliError> {
    let a = read_act(source)?;
    let b = read_act(target)?;
    let all = enumerate_homs(&a, &b, bounds)?;
    let listed: Vec<Value> = all
        .iter()
        .map(|h| {
            let k = h.kind();
            json!({"map": pairs(h), "mono": k.mono, "epi": k.epi, "iso": k.iso})
        })
        .collect();
    Ok(json!({"count": listed.len(), "homs": listed}))
}

pub fn psi(act: &Path, summands: &[PathBuf], bounds: &Bounds) -> Result<Value, CliError> {
    let c = read_act(act)?;
    let parts = summands
        .iter()
        .map(|p| read_act(p))
        .collect::<Result<Vec<Act>, _>>()?;
    let psi = psi_map(&c, &parts, bounds)?;
    let entries: Vec<Value> = psi
        .entries
        .iter()
        .map(|e| json!({"summand": e.summand + 1, "hom": pairs(&e.hom), "composed": pairs(&e.composed)}))
        .collect();
    let missed: Vec<Value> = psi
        .codomain
        .iter()
        .filter(|h| !psi.entries.iter().any(|e| e.composed.map() == h.map()))
        .map(pairs)
        .collect();
    Ok(json!({
        "domain": psi.entries.len(),
        "codomain": psi.codomain.len(),
        "injective": psi.injective,
        "surjective": psi.surjective,
        "entries": entries,
        "not_in_image": missed,
    }))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })
}

fn act_json(a: &Act) -> String {
    serde_json::to_string_pretty(&act_to_spec(a)).expect("act serializes") + "\n"
}

fn file_name(prefix: &str, i: usize) -> String {
    format!("{prefix}_{:04}.json", i + 1)
}

pub fn steady(
    monoid: &Path,
    pointed: bool,
    out: Option<&Path>,
    bounds: &Bounds,
) -> Result<Value, CliError> {
    let m = read_monoid(monoid)?;
    let found = check_steady_bounded(&m, bounds.max_size, pointed, bounds)?;
    let listed: Vec<Value> = match out {
        Some(dir) => {
            ensure_dir(dir)?;
            let mut names = Vec::new();
            for (i, a) in found.iter().enumerate() {
                let name = file_name("counterexample", i);
                write_text(&dir.join(&name), &act_json(a))?;
                names.push(json!(name));
            }
            log::info!("wrote {} files to {}", names.len(), dir.display());
            names
        }
        None => found
            .iter()
            .map(|a| serde_json::to_value(act_to_spec(a)).expect("act serializes"))
            .collect(),
    };
    Ok(json!({
        "max_size": bounds.max_size,
        "pointed": pointed,
        "count": found.len(),
        "counterexamples": listed,
    }))
}

const FLAGS: [&str; 7] = [
    "indecomposable",
    "hollow",
    "connected",
    "autoconnected",
    "cyclic",
    "locally_cyclic",
    "projective",
];

pub fn enumerate(
    monoid: &Path,
    size: usize,
    pointed: bool,
    out: &Path,
    bounds: &Bounds,
) -> Result<Value, CliError> {
    let m = read_monoid(monoid)?;
    let acts = enumerate_acts(&m, size, pointed, bounds)?;
    let reports = monact::par::map(&acts, |a| {
        if a.is_initial() {
            Ok(None)
        } else {
            classify_act(a, bounds).map(Some)
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    ensure_dir(out)?;
    let mut counts = serde_json::Map::new();
    for flag in FLAGS {
        counts.insert(flag.into(), json!(0));
    }
    let mut entries = Vec::new();
    for (i, (a, report)) in acts.iter().zip(&reports).enumerate() {
        let name = file_name("act", i);
        write_text(&out.join(&name), &act_json(a))?;
        let mut entry = json!({"file": name});
        match report {
            None => entry["initial"] = json!(true),
            Some(r) => {
                let flags = serde_json::to_value(r).expect("report serializes");
                for flag in FLAGS {
                    entry[flag] = flags[flag].clone();
                    if flags[flag] == json!(true) {
                        let c = counts[flag].as_u64().unwrap_or(0);
                        counts[flag] = json!(c + 1);
                    }
                }
            }
        }
        entries.push(entry);
    }
    let index = json!({
        "size": size,
        "pointed": pointed,
        "count": acts.len(),
        "flag_counts": counts,
        "acts": entries,
    });
    write_text(
        &out.join("index.json"),
        &(serde_json::to_string_pretty(&index).expect("index serializes") + "\n"),
    )?;
    log::info!("wrote {} acts to {}", acts.len(), out.display());
    Ok(index)
}
