//! Acceptance criteria. Each prints one PASS/FAIL line with its timing.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use monact::catalog;
use monact::classify::{
    autoconnected_oracle, check_steady_bounded, connected_oracle, free_cover_splits,
    is_autoconnected, is_connected, is_cyclic, is_hollow, is_projective,
};
use monact::constructions::{coproduct, psi_map, pullback, rees_factor};
use monact::decomposition::verify_decomposition;
use monact::enumerate::{canonical_key, enumerate_up_to};
use monact::{are_isomorphic, decompose, enumerate_homs, is_indecomposable, Act, Bounds, SubAct};

type Outcome = (bool, Value);

fn bounds() -> Bounds {
    Bounds::default()
}

struct Family {
    name: &'static str,
    pointed: bool,
    acts: Vec<Act>,
}

/// Acts of size `1..=max` over the test monoids; pointed families only
/// for monoids with zero.
fn families(max: usize, plain: bool, pointed: bool) -> Vec<Family> {
    let mut out = Vec::new();
    for (name, m) in catalog::test_monoids() {
        let m = Arc::new(m);
        for p in [false, true] {
            if (p && (!pointed || m.zero().is_none())) || (!p && !plain) {
                continue;
            }
            let acts = enumerate_up_to(&m, max, p, &bounds()).unwrap();
            out.push(Family {
                name,
                pointed: p,
                acts,
            });
        }
    }
    out
}

fn tag(f: &Family) -> String {
    format!("{}/{}", f.name, if f.pointed { "pointed" } else { "plain" })
}

fn names(a: &Act, s: &SubAct) -> Vec<String> {
    s.labels(a).into_iter().map(String::from).collect()
}

fn worked_example() -> Outcome {
    let b = bounds();
    let a = catalog::worked_example_act();
    let l = |x: &str| a.index_of(x).unwrap();
    let indecomposable = is_indecomposable(&a);

    let h = is_hollow(&a);
    let sx = a.generated_subact([l("x")]);
    let sy = a.generated_subact([l("y")]);
    let pair_ok = match &h.witness {
        Some((b1, b2)) => (b1 == &sx && b2 == &sy) || (b1 == &sy && b2 == &sx),
        None => false,
    };

    let connected = is_connected(&a).unwrap();
    let auto = is_autoconnected(&a, &b).unwrap();
    let projections_nonzero = auto.witness.as_ref().is_some_and(|g| {
        auto.square
            .projections
            .iter()
            .all(|pi| (0..a.len()).any(|x| Some(pi.apply(g.apply(x))) != pi.target().base_point()))
    });

    let (q, _, _) = rees_factor(&a, &a.generated_subact([l("z")])).unwrap();
    let parts = decompose(&q).unwrap().part_acts();
    let keys: Vec<Vec<u8>> = parts
        .iter()
        .map(|p| canonical_key(p, &b).unwrap())
        .collect();
    let equal_keys = keys.len() == 2 && keys[0] == keys[1];

    let pass = indecomposable
        && !h.hollow
        && pair_ok
        && !connected
        && !auto.autoconnected
        && projections_nonzero
        && equal_keys;
    (
        pass,
        json!({
            "indecomposable": indecomposable,
            "hollow": h.hollow,
            "hollow_witness": h.witness.as_ref().map(|(b1, b2)| [names(&a, b1), names(&a, b2)]),
            "connected": connected,
            "autoconnected": auto.autoconnected,
            "witness": auto.witness.as_ref().map(|g| g.image_labels()),
            "projections_nonzero": projections_nonzero,
            "quotient_parts": parts.len(),
            "quotient_keys_equal": equal_keys,
        }),
    )
}

fn hollow_vs_oracle() -> Outcome {
    let b = bounds();
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for f in families(5, false, true) {
        for a in f.acts.iter().filter(|a| !a.is_initial()) {
            checked += 1;
            let fast = is_hollow(a).hollow;
            if fast != connected_oracle(a, &b).unwrap() {
                disagreements.push(format!("{}: {:?}", tag(&f), a.labels()));
            }
        }
    }
    (
        disagreements.is_empty(),
        json!({"checked": checked, "disagreements": disagreements}),
    )
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

fn decomposition_uniqueness() -> Outcome {
    let mut checked = 0;
    let mut partitions_tested = 0;
    let mut failures = Vec::new();
    for f in families(5, true, true) {
        for a in f.acts.iter().filter(|a| !a.is_initial()) {
            checked += 1;
            let d = decompose(a).unwrap();
            let parts = d.part_acts();
            let mut expected: Vec<Vec<usize>> =
                d.parts.iter().map(|p| p.members().to_vec()).collect();
            expected.sort();
            let mut ok = parts.iter().all(is_indecomposable);
            let sum = coproduct(a.monoid(), &parts, a.is_pointed()).unwrap();
            ok &= are_isomorphic(&sum.total, a).is_some();
            let movable: Vec<usize> = (0..a.len()).filter(|&x| !a.is_trivial_element(x)).collect();
            for blocks in set_partitions(&movable) {
                let candidate: Option<Vec<SubAct>> = blocks
                    .iter()
                    .map(|blk| a.subact(blk.iter().copied().chain(a.base_point())).ok())
                    .collect();
                let Some(candidate) = candidate else { continue };
                if !verify_decomposition(a, &candidate).unwrap()
                    || !candidate
                        .iter()
                        .all(|p| is_indecomposable(&a.restrict(p).0))
                {
                    continue;
                }
                partitions_tested += 1;
                let mut got: Vec<Vec<usize>> =
                    candidate.iter().map(|p| p.members().to_vec()).collect();
                got.sort();
                ok &= got == expected;
            }
            if !ok {
                failures.push(format!("{}: {:?}", tag(&f), a.labels()));
            }
        }
    }
    (
        failures.is_empty(),
        json!({"checked": checked, "indecomposable_partitions": partitions_tested, "failures": failures}),
    )
}

fn plain_collapse() -> Outcome {
    let b = bounds();
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for f in families(5, true, false) {
        for a in &f.acts {
            checked += 1;
            let values = [
                is_connected(a).unwrap(),
                is_autoconnected(a, &b).unwrap().autoconnected,
                is_indecomposable(a),
                connected_oracle(a, &b).unwrap(),
                autoconnected_oracle(a, &b).unwrap(),
            ];
            if values.iter().any(|&v| v != values[0]) {
                disagreements.push(format!("{}: {:?} {:?}", tag(&f), a.labels(), values));
            }
        }
    }
    (
        disagreements.is_empty(),
        json!({"checked": checked, "disagreements": disagreements}),
    )
}

fn cyclic_implies_connected() -> Outcome {
    let mut cyclic = 0;
    let mut failures = Vec::new();
    for f in families(5, true, true) {
        for a in f.acts.iter().filter(|a| !a.is_initial()) {
            if is_cyclic(a).is_some() {
                cyclic += 1;
                if !is_connected(a).unwrap() {
                    failures.push(format!("{}: {:?}", tag(&f), a.labels()));
                }
            }
        }
    }
    (
        failures.is_empty(),
        json!({"cyclic_acts": cyclic, "failures": failures}),
    )
}

fn projectivity() -> Outcome {
    let b = bounds();
    let mut checked = 0;
    let mut projective = 0;
    let mut failures = Vec::new();
    for f in families(4, true, true) {
        let m = f.acts[0].monoid().clone();
        let s = Act::regular(m, f.pointed).unwrap();
        if !is_projective(&s, &b).unwrap() {
            failures.push(format!("{}: S not projective", tag(&f)));
        }
        for a in &f.acts {
            checked += 1;
            let fast = is_projective(a, &b).unwrap();
            projective += fast as usize;
            if fast != free_cover_splits(a, &b).unwrap() {
                failures.push(format!(
                    "{}: {:?} retract test disagrees",
                    tag(&f),
                    a.labels()
                ));
            }
            if fast && !a.is_initial() && is_connected(a).unwrap() != is_cyclic(a).is_some() {
                failures.push(format!("{}: {:?} connected != cyclic", tag(&f), a.labels()));
            }
        }
    }
    (
        failures.is_empty(),
        json!({"checked": checked, "projective": projective, "failures": failures}),
    )
}

fn group_steadiness() -> Outcome {
    let mut found = Vec::new();
    for n in [2, 3] {
        let m = Arc::new(catalog::cyclic_group(n));
        let cex = check_steady_bounded(&m, 6, false, &bounds()).unwrap();
        found.push(json!({"group": format!("Z{n}"), "counterexamples": cex.len()}));
        if !cex.is_empty() {
            return (false, json!(found));
        }
    }
    (true, json!(found))
}

fn psi_behaviour() -> Outcome {
    let b = bounds();
    let mut plain_checked = 0;
    let mut failures = Vec::new();
    for f in families(3, true, false) {
        let small: Vec<&Act> = f.acts.iter().filter(|a| a.len() <= 2).collect();
        for c in &f.acts {
            for a1 in &small {
                for a2 in &small {
                    plain_checked += 1;
                    let psi = psi_map(c, &[(*a1).clone(), (*a2).clone()], &b).unwrap();
                    if !psi.injective {
                        failures.push(format!("{}: {:?}", tag(&f), c.labels()));
                    }
                }
            }
        }
    }
    let mut pointed = Vec::new();
    for f in families(1, false, true) {
        let point = f.acts[0].clone();
        let psi = psi_map(&point, &[point.clone(), point.clone()], &b).unwrap();
        let ok = psi.entries.len() == 2 && psi.codomain.len() == 1;
        if !ok {
            failures.push(format!(
                "{}: point has |domain|={}",
                tag(&f),
                psi.entries.len()
            ));
        }
        pointed.push(json!([tag(&f), psi.entries.len(), psi.codomain.len()]));
    }
    let a = catalog::worked_example_act();
    let worked = psi_map(&a, &[a.clone(), a.clone()], &b).unwrap();
    if worked.surjective {
        failures.push("worked example: psi surjective".into());
    }
    (
        failures.is_empty(),
        json!({
            "plain_checked": plain_checked,
            "pointed_point": pointed,
            "worked_example": [worked.entries.len(), worked.codomain.len(), worked.surjective],
            "failures": failures,
        }),
    )
}

fn plain_extensivity() -> Outcome {
    let b = bounds();
    let mut homs_checked = 0;
    let mut failures = Vec::new();
    for f in families(4, true, false) {
        let small: Vec<&Act> = f.acts.iter().filter(|a| a.len() <= 2).collect();
        let m = f.acts[0].monoid().clone();
        for x in &f.acts {
            for a1 in &small {
                for a2 in &small {
                    let sum = coproduct(&m, &[(*a1).clone(), (*a2).clone()], false).unwrap();
                    for h in enumerate_homs(x, &sum.total, &b).unwrap() {
                        homs_checked += 1;
                        let p1 = pullback(&sum.injections[0], &h).unwrap();
                        let p2 = pullback(&sum.injections[1], &h).unwrap();
                        let back = coproduct(&m, &[p1.act.clone(), p2.act.clone()], false).unwrap();
                        let iso = back
                            .copair(&[p1.right.clone(), p2.right.clone()])
                            .unwrap()
                            .kind()
                            .iso;
                        if !iso {
                            failures.push(format!("{}: {:?}", tag(&f), x.labels()));
                        }
                    }
                }
            }
        }
    }
    (
        failures.is_empty(),
        json!({"homs_checked": homs_checked, "failures": failures}),
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (
        1,
        "worked example reproduction",
        Duration::from_secs(1),
        worked_example,
    ),
    (
        2,
        "hollow agrees with the quotient oracle",
        Duration::from_secs(60),
        hollow_vs_oracle,
    ),
    (
        3,
        "decomposition uniqueness",
        Duration::from_secs(60),
        decomposition_uniqueness,
    ),
    (
        4,
        "plain connected = autoconnected = indecomposable",
        Duration::from_secs(60),
        plain_collapse,
    ),
    (
        5,
        "cyclic implies connected",
        Duration::from_secs(30),
        cyclic_implies_connected,
    ),
    (
        6,
        "projectivity cross-check",
        Duration::from_secs(120),
        projectivity,
    ),
    (
        7,
        "Z2 and Z3 steady up to size 6",
        Duration::from_secs(60),
        group_steadiness,
    ),
    (
        8,
        "comparison map behaviour",
        Duration::from_secs(10),
        psi_behaviour,
    ),
    (
        9,
        "plain extensivity",
        Duration::from_secs(60),
        plain_extensivity,
    ),
];

fn summary() -> String {
    let all: Vec<Value> = CRITERIA
        .iter()
        .map(|(id, _, _, run)| {
            let (pass, detail) = run();
            json!({"criterion": id, "pass": pass, "detail": detail})
        })
        .collect();
    serde_json::to_string(&all).unwrap()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

/// Stdout plus every written file, for one invocation.
fn cli_run(threads: usize, args: &[String], out_dir: Option<&Path>) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_monact"))
        .arg("--threads")
        .arg(threads.to_string())
        .args(args)
        .output()
        .unwrap();
    let mut bytes = out.stdout;
    bytes.extend(out.status.code().unwrap_or(-1).to_string().bytes());
    if let Some(dir) = out_dir {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        for f in files {
            bytes.extend(f.file_name().unwrap().to_string_lossy().bytes());
            bytes.extend(std::fs::read(&f).unwrap());
        }
    }
    bytes
}

fn cli_deterministic() -> Vec<String> {
    let s = |p: PathBuf| p.to_string_lossy().into_owned();
    let worked = s(data("worked_example.json"));
    let simple: Vec<Vec<String>> = vec![
        vec!["reproduce-paper".into()],
        vec!["classify".into(), "--act".into(), worked.clone()],
        vec!["decompose".into(), "--act".into(), s(data("quotient.json"))],
        vec![
            "psi".into(),
            "--act".into(),
            worked.clone(),
            "--summand".into(),
            worked.clone(),
            "--summand".into(),
            worked,
        ],
        vec!["steady".into(), "--monoid".into(), s(data("z3.json"))],
        vec![
            "steady".into(),
            "--monoid".into(),
            s(data("truncated_powers.json")),
            "--max-size".into(),
            "5".into(),
        ],
    ];
    let mut mismatches = Vec::new();
    for args in &simple {
        let runs = [
            cli_run(1, args, None),
            cli_run(8, args, None),
            cli_run(8, args, None),
        ];
        if runs.iter().any(|r| r != &runs[0]) {
            mismatches.push(args.join(" "));
        }
    }
    for (monoid, pointed) in [
        ("z6_mult.json", false),
        ("z6_mult.json", true),
        ("truncated_powers.json", false),
    ] {
        let mut runs = Vec::new();
        for threads in [1, 8, 8] {
            let dir = tempfile::tempdir().unwrap();
            let mut args = vec![
                "enumerate".into(),
                "--monoid".into(),
                s(data(monoid)),
                "--size".into(),
                "4".into(),
            ];
            if pointed {
                args.push("--pointed".into());
            }
            // same output path each time so the echoed path cannot differ
            let out = dir.path().join("out");
            args.extend(["--out".into(), s(out.clone())]);
            let mut bytes = cli_run(threads, &args, Some(&out));
            // drop the temp prefix, which differs between runs
            let prefix = dir.path().to_string_lossy().into_owned();
            bytes = String::from_utf8(bytes)
                .unwrap()
                .replace(&prefix, "")
                .into_bytes();
            runs.push(bytes);
        }
        if runs.iter().any(|r| r != &runs[0]) {
            mismatches.push(format!("enumerate {monoid} pointed={pointed}"));
        }
    }
    mismatches
}

#[test]
fn acceptance() {
    let mut all_pass = true;
    let mut lines = Vec::new();
    for (id, what, limit, run) in CRITERIA {
        let start = Instant::now();
        let (pass, detail) = run();
        let took = start.elapsed();
        let ok = pass && took < limit;
        all_pass &= ok;
        lines.push(format!(
            "criterion {id:>2}: {} {what} ({:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        ));
        if !ok {
            lines.push(format!("    detail: {detail}"));
        }
    }

    let start = Instant::now();
    let one = in_pool(1, summary);
    let eight = in_pool(8, summary);
    let again = in_pool(8, summary);
    let library_same = one == eight && eight == again;
    let cli_mismatches = cli_deterministic();
    let ok = library_same && cli_mismatches.is_empty();
    all_pass &= ok;
    lines.push(format!(
        "criterion 10: {} byte-identical results across runs and thread counts ({:.2} s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    ));
    if !ok {
        lines.push(format!(
            "    library identical: {library_same}; cli mismatches: {cli_mismatches:?}"
        ));
    }

    // straight to the handle so the lines show even when output is captured
    let mut err = std::io::stderr().lock();
    for line in &lines {
        writeln!(err, "{line}").unwrap();
    }
    assert!(all_pass, "{}", lines.join("\n"));
}
