//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p critexp-acceptance --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use critexp::chordal::{clique_matrix, critical_exponent_chordal, is_chordal, perfect_clique_ordering};
use critexp::cli::{run, Cli, Common, GraphSource, Sampling, Verb, EXIT_OK};
use critexp::graph::{io, largest_near_clique, schur_complement_graph, Graph, DEFAULT_VERTEX_CAP};
use critexp::matrix::{
    diagonal_conjugate, entrywise_power, in_cone, is_psd, matrix_schur_complement,
    split_decomposition, witness_path3, PowerKind, PowerMap, SymMatrix, DEFAULT_SPLIT_EPS,
};
use critexp::verifier::{
    falsify, preserves, superadditive_falsify, ConeSampler, SampleConfig, SearchLimits,
};
use critexp_acceptance::{family, random_chordal, random_graph, structure_battery, table_battery};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            pass: false,
            detail: failures.join("; "),
        }
    }
}

fn config(trials: usize) -> SampleConfig {
    SampleConfig {
        trials,
        ..SampleConfig::default()
    }
}

/// Critical exponent three ways: clique-matrix formula, `max(ω - 2, s)`
/// from a perfect ordering, and the largest near-clique minus two.
fn three_routes(g: &Graph) -> (i64, i64, i64) {
    let formula = clique_matrix(g, DEFAULT_VERTEX_CAP).unwrap().max_shifted_gram_entry();
    let ord = perfect_clique_ordering(g).unwrap();
    let separator = (ord.clique_number() as i64 - 2).max(ord.max_separator() as i64);
    let near = largest_near_clique(g, DEFAULT_VERTEX_CAP).unwrap() as i64 - 2;
    (formula, separator, near)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = table_battery();
    let mut failures = Vec::new();
    for case in &cases {
        let routes = three_routes(&case.graph);
        let want = case.ce as i64;
        if routes != (want, want, want) {
            failures.push(format!("{}: routes {routes:?}, expected {want}", case.name));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("runtime {elapsed:.2?} exceeds 5 s"));
    }
    outcome(&failures, format!("{} graphs, three-way agreement", cases.len()))
}

/// Largest `k` such that some `k` vertices span at least `C(k,2) - 1` edges.
fn brute_force_r(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = vs.len();
        if k <= best {
            continue;
        }
        let mut edges = 0;
        for (a, &u) in vs.iter().enumerate() {
            edges += vs[a + 1..].iter().filter(|&&w| g.has_edge(u, w)).count();
        }
        if edges + 1 >= k * (k - 1) / 2 {
            best = k;
        }
    }
    best
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut exhaustive = 0;
    for n in 2..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() || !is_chordal(&g) {
                continue;
            }
            exhaustive += 1;
            let ce = critical_exponent_chordal(&g).unwrap().ce(PowerKind::Plain);
            let oracle = brute_force_r(&g) as f64 - 2.0;
            if ce != oracle {
                failures.push(format!("{}: formula {ce}, oracle {oracle}", io::write_edge_list(&g).replace('\n', " ")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let g = random_chordal(n, &mut rng);
        let ce = critical_exponent_chordal(&g).unwrap().ce(PowerKind::Plain);
        let oracle = brute_force_r(&g) as f64 - 2.0;
        if ce != oracle {
            failures.push(format!("random {}: formula {ce}, oracle {oracle}", io::write_edge_list(&g).replace('\n', " ")));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:.2?} exceeds 60 s"));
    }
    outcome(&failures, format!("{exhaustive} connected chordal graphs on <= 6 vertices, 200 random on <= 8"))
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    let p3 = family("path:3");
    let a = witness_path3(0.6).unwrap();
    for kind in PowerKind::ALL {
        let p = PowerMap::new(kind, 0.5);
        let det = entrywise_power(&a, p).unwrap().to_dense().determinant();
        if (det + 0.4).abs() > 1e-12 {
            failures.push(format!("P3 {kind}: det {det:e}, expected -0.4"));
        }
        let v = preserves(&p3, p, &config(1000), None).unwrap();
        match &v.counterexample {
            Some(cx) if cx.source.starts_with("path3") => {}
            other => failures.push(format!("P3 {kind} 0.5: {:?}", other.as_ref().map(|c| &c.source))),
        }
    }
    notes.push("P3 det -0.4".to_string());

    let v = preserves(&family("complete:4"), PowerMap::new(PowerKind::Plain, 1.5), &config(10_000), None).unwrap();
    match &v.counterexample {
        Some(cx) => notes.push(format!("K4 1.5 by {}", cx.source)),
        None => failures.push(format!("K4 plain 1.5 survived {} trials", v.trials_run)),
    }

    let v = preserves(&family("cycle:4"), PowerMap::new(PowerKind::EvenPhi, 1.75), &config(1000), None).unwrap();
    match &v.counterexample {
        Some(cx) if cx.source == "cosine(4)" && cx.verdict.min_eigenvalue.0 < -1e-6 => {
            notes.push(format!("C4 phi 1.75 min eig {:.3e}", cx.verdict.min_eigenvalue.0))
        }
        other => failures.push(format!("C4 phi 1.75: {other:?}")),
    }

    let v = falsify(
        &family("complete_minus_edge:4"),
        PowerMap::new(PowerKind::Plain, 1.75),
        &config(1000),
        None,
        &SearchLimits::default(),
    )
    .unwrap();
    match &v.counterexample {
        Some(cx) if cx.source.starts_with("w(") || cx.source.starts_with("local_search(w(") => {
            notes.push(format!("K4-e 1.75 by {}", cx.source))
        }
        other => failures.push(format!("K4-e plain 1.75: {:?}", other.as_ref().map(|c| &c.source))),
    }
    outcome(&failures, notes.join(", "))
}

fn criterion_4() -> Outcome {
    let mut cases = vec![
        ("complete:4", PowerKind::Plain, 2.0),
        ("cycle:5", PowerKind::OddPsi, 1.0),
        ("complete_bipartite:3,3", PowerKind::Plain, 1.2),
    ];
    for kind in PowerKind::ALL {
        cases.push(("band:7,2", kind, 2.0));
    }
    let mut failures = Vec::new();
    for (spec, kind, alpha) in &cases {
        let v = preserves(&family(spec), PowerMap::new(*kind, *alpha), &config(1000), Some(1e-9)).unwrap();
        if !v.preserved || v.trials_run != 1000 {
            failures.push(format!("{spec} {kind} {alpha}: preserved {} after {} trials", v.preserved, v.trials_run));
        }
    }
    outcome(&failures, format!("{} spot checks, 1000 trials each at tol 1e-9", cases.len()))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (m, kind, alpha) in [
        (2, PowerKind::Plain, 1.5),
        (3, PowerKind::Plain, 2.5),
        (2, PowerKind::OddPsi, 2.0),
        (2, PowerKind::EvenPhi, 1.0),
    ] {
        match superadditive_falsify(m, PowerMap::new(kind, alpha), 10_000, 0).unwrap() {
            Some(x) => notes.push(format!("m={m} {kind} {alpha}: min eig {:.2e}", x.verdict.min_eigenvalue.0)),
            None => failures.push(format!("m={m} {kind} {alpha}: no violation in 10^4 pairs")),
        }
    }
    for m in [2, 3] {
        if let Some(x) = superadditive_falsify(m, PowerMap::new(PowerKind::Plain, m as f64), 1000, 0).unwrap() {
            failures.push(format!("m={m} plain {m}: unexpected violation {:?}", x.verdict.min_eigenvalue));
        }
    }
    // the smallest dimension where the odd family breaks at 2
    let m3 = superadditive_falsify(3, PowerMap::new(PowerKind::OddPsi, 2.0), 10_000, 0).unwrap();
    let supplement = format!("supplementary m=3 psi 2: {}", if m3.is_some() { "violation found" } else { "none" });
    if failures.is_empty() {
        outcome(&failures, format!("{}; {supplement}", notes.join(", ")))
    } else {
        failures.push(supplement);
        outcome(&failures, String::new())
    }
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();

    let mut samples = 0;
    for k in 0..20u64 {
        let g = random_graph(3 + (k as usize % 8), 0.5, 600 + k);
        let cfg = SampleConfig { seed: k, ..config(500) };
        let sampler = ConeSampler::new(&g, &cfg, DEFAULT_VERTEX_CAP).unwrap();
        for t in 0..500 {
            for nonneg in [false, true] {
                samples += 1;
                if !in_cone(&sampler.sample(t, nonneg), &g, None).unwrap() {
                    failures.push(format!("sample {t} of graph {k} left the cone"));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut splits = 0;
    while splits < 1000 {
        let n = rng.random_range(3..=8);
        let g = random_chordal(n, &mut rng);
        let ord = perfect_clique_ordering(&g).unwrap();
        let last = ord.len() - 1;
        let c = ord.separators[last].clone();
        let b = ord.residuals[last].clone();
        let a: Vec<usize> = (0..n).filter(|v| !ord.cliques[last].contains(v)).collect();
        if a.is_empty() {
            continue;
        }
        let cfg = SampleConfig { seed: splits, ..config(1) };
        let sampler = ConeSampler::new(&g, &cfg, DEFAULT_VERTEX_CAP).unwrap();
        // a positive diagonal keeps the principal blocks invertible
        let m = sampler.sample(0, false).add(&SymMatrix::identity(n).scale(0.1)).unwrap();
        let s = split_decomposition(&m, &a, &c, &b, DEFAULT_SPLIT_EPS).unwrap();
        let err = s.m1.add(&s.m2).unwrap().max_abs_diff(&m).unwrap() / m.max_abs();
        worst = worst.max(err);
        if err > 1e-10 || s.regularization != 0.0 {
            failures.push(format!("split error {err:e} (regularization {})", s.regularization));
        }
        splits += 1;
    }

    let mut schur = 0;
    for t in 0..1000u64 {
        let g = random_graph(4 + (t as usize % 5), 0.45, 7000 + t);
        let m = ConeSampler::new(&g, &SampleConfig { seed: t, ..config(1) }, DEFAULT_VERTEX_CAP)
            .unwrap()
            .sample(0, false)
            .add(&SymMatrix::identity(g.vertex_count()).scale(0.1))
            .unwrap();
        let v = (t as usize) % g.vertex_count();
        let sc = matrix_schur_complement(&m, v).unwrap();
        let h = schur_complement_graph(&g, v).unwrap();
        if !in_cone(&sc, &h, None).unwrap() {
            failures.push(format!("Schur complement at {v} left P(G/v) on trial {t}"));
        }
        schur += 1;
    }

    let mut paired = 0;
    let mut borderline = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(612);
    for t in 0..1000u64 {
        let g = family(["complete:4", "cycle:5", "band:6,2", "complete_bipartite:2,3"][t as usize % 4]);
        let n = g.vertex_count();
        let kind = PowerKind::ALL[rng.random_range(0..3)];
        let alpha = rng.random_range(0.1..3.0);
        let m = ConeSampler::new(&g, &SampleConfig { seed: t, ..config(1) }, DEFAULT_VERTEX_CAP)
            .unwrap()
            .sample(0, kind == PowerKind::Plain);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..5.0)).collect();
        let scaled = diagonal_conjugate(&m, &d).unwrap();
        let p = PowerMap::new(kind, alpha);
        let norm = |x: &SymMatrix| x.scale(1.0 / x.max_abs());
        let v1 = is_psd(&entrywise_power(&norm(&m), p).unwrap(), None).unwrap();
        let v2 = is_psd(&entrywise_power(&norm(&scaled), p).unwrap(), None).unwrap();
        let near_zero = |x: f64| x.abs() < 1e-7;
        if near_zero(v1.min_eigenvalue.0) || near_zero(v2.min_eigenvalue.0) {
            borderline += 1;
            continue;
        }
        paired += 1;
        if v1.is_psd != v2.is_psd {
            failures.push(format!("scaling changed the verdict on trial {t} ({kind} {alpha})"));
        }
    }

    outcome(
        &failures,
        format!(
            "{samples} cone samples, {splits} splits (worst {worst:.1e}), {schur} Schur complements, {paired} scaling pairs ({borderline} borderline skipped)"
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut graphs: Vec<(String, Graph)> = table_battery().into_iter().map(|c| (c.name, c.graph)).collect();
    graphs.extend(structure_battery());
    let mut failures = Vec::new();
    for (k, (name, g)) in graphs.iter().enumerate() {
        let path = dir.path().join(format!("g{k}.txt"));
        std::fs::write(&path, io::write_edge_list(g)).unwrap();
        let cli = Cli {
            verb: Verb::Crosscheck {
                source: GraphSource {
                    family: None,
                    graph: Some(path),
                },
                common: Common {
                    output: None,
                    cap: DEFAULT_VERTEX_CAP,
                },
                sampling: Sampling {
                    seed: 0,
                    trials: 1000,
                    tol: None,
                },
            },
        };
        match run(&cli) {
            Ok(out) if out.status == EXIT_OK => {}
            Ok(out) => failures.push(format!("{name}: exit {} {}", out.status, out.document)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("runtime {elapsed:.2?} exceeds 10 min"));
    }
    outcome(&failures, format!("{} graphs consistent", graphs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("exponent table, three routes", criterion_1),
        ("chordal oracle equivalence", criterion_2),
        ("witness falsification", criterion_3),
        ("preservation spot checks", criterion_4),
        ("super-additivity suite", criterion_5),
        ("structural properties", criterion_6),
        ("cross-check battery", criterion_7),
    ];
    let mut all = true;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {verdict} [{secs:.2} s] {}", k + 1, o.detail);
        all &= o.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
