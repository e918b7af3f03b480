//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.
// `!(a <= b)` is kept so NaN fails a check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[path = "../../core/tests/oracles/mod.rs"]
mod oracles;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use chrono::{TimeDelta, TimeZone, Utc};
use ideascope_core::analytics::{avg_pairwise_distance, detect_novel, kmeans, path_length, select_k_elbow};
use ideascope_core::dimred::{explained_variance_report, fit_pca, input_affinities, kl_divergence, kl_gradient, PcaModel};
use ideascope_core::embed::{negative_sampling_gradient, negative_sampling_loss, train_doc2vec, Hyperparameters};
use ideascope_core::geography::{build_terrain, find_peaks, Metric};
use ideascope_core::ingest::{build_ring_lattice, synth_session, SynthConfig};
use ideascope_core::network::{
    animate, build_scene, detect_innovator, layout_ring, link_idea_nodes, IdeaNode, LinkPolicy, SceneConfig,
    SCENE_SCHEMA,
};
use oracles::*;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("PCA oracle equivalence", pca_oracle),
        ("variance-report contract", variance_contract),
        ("embedding separation", embedding_separation),
        ("gradient checks", gradient_checks),
        ("labelled-sample fixture", labelled_sample_fixture),
        ("k-means and elbow", kmeans_elbow),
        ("analytics oracles", analytics_oracles),
        ("terrain contract", terrain_contract),
        ("network scene contract", network_contract),
        ("end-to-end determinism", end_to_end),
        ("output well-formedness", well_formed),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{}/{} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn pca_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..20 {
        let x = random_matrix(50, 10, seed);
        let model = fit_pca(&x).map_err(|e| e.to_string())?;
        let (values, vectors) = jacobi_eigen(&covariance(&x), 10);
        for k in 0..2 {
            worst = worst.max((model.eigenvalues[k] - values[k]).abs());
            let oracle = sign_fix(vectors[k].clone());
            for (a, b) in model.components[k].iter().zip(&oracle) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(worst <= 1e-8, "max deviation {worst:e} > 1e-8");
    ensure!(secs < 5.0, "took {secs:.2}s");
    Ok(format!("20 matrices, max deviation {worst:.1e}, {secs:.3}s"))
}

fn check_report(model: &PcaModel<f64>, what: &str) -> Result<(), String> {
    let r = explained_variance_report(model, 0.5);
    for w in r.ratios.windows(2) {
        ensure!(w[0] >= w[1], "{what}: ratios not descending ({} < {})", w[0], w[1]);
    }
    ensure!(r.cumulative.iter().all(|&c| c <= 1.0 + 1e-9), "{what}: cumulative exceeds 1 + 1e-9");
    Ok(())
}

fn variance_contract() -> Outcome {
    let mut fitted = 0;
    for seed in 0..20 {
        check_report(&fit_pca(&random_matrix(50, 10, seed)).map_err(|e| e.to_string())?, "50x10")?;
        fitted += 1;
    }
    for seed in 0..200u64 {
        let rows = 3 + (seed as usize * 7) % 40;
        let cols = 2 + (seed as usize * 3) % 12;
        check_report(&fit_pca(&random_matrix(rows, cols, 5000 + seed)).map_err(|e| e.to_string())?, "random")?;
        fitted += 1;
    }
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let basis = random_matrix(2, 8, 70 + seed);
        let coeffs = random_matrix(40, 2, 90 + seed);
        let x: Vec<Vec<f64>> = coeffs
            .iter()
            .map(|c| (0..8).map(|j| c[0] * basis[0][j] + c[1] * basis[1][j]).collect())
            .collect();
        let model = fit_pca(&x).map_err(|e| e.to_string())?;
        check_report(&model, "rank-2")?;
        let r = explained_variance_report(&model, 0.5);
        worst = worst.max((r.cumulative[1] - 1.0).abs());
        fitted += 1;
    }
    ensure!(worst <= 1e-9, "rank-2 cumulative off by {worst:e}");
    Ok(format!("{fitted} models, rank-2 coverage within {worst:.1e} of 1"))
}

fn embedding_separation() -> Outcome {
    let (docs, topics) = two_topic_corpus();
    ensure!(docs.len() == 40, "corpus has {} documents", docs.len());
    let start = Instant::now();
    let model = train_doc2vec::<f64, _>(&docs, &Hyperparameters::default(), 1).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let (purity, intra, inter) = separation(&model.doc_vectors(), &topics);
    ensure!(purity >= 0.9, "purity {purity}");
    ensure!(intra > inter, "intra {intra} <= inter {inter}");
    ensure!(secs < 60.0, "training took {secs:.1}s");
    Ok(format!("purity {purity:.3}, intra {intra:.3} > inter {inter:.3}, {secs:.2}s"))
}

fn gradient_checks() -> Outcome {
    const DIM: usize = 8;
    const NEG: usize = 3;
    let split = |x: &[f64]| -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
        (
            x[..DIM].to_vec(),
            x[DIM..2 * DIM].to_vec(),
            x[2 * DIM..].chunks(DIM).map(<[f64]>::to_vec).collect(),
        )
    };
    let mut ns_worst = 0.0f64;
    for seed in 0..10 {
        let x = random_matrix(1, DIM * (2 + NEG), 100 + seed)[0].clone();
        let (c, p, n) = split(&x);
        let refs: Vec<&[f64]> = n.iter().map(Vec::as_slice).collect();
        let g = negative_sampling_gradient(&c, &p, &refs);
        let mut analytic = g.context.clone();
        analytic.extend(&g.positive);
        for ng in &g.negatives {
            analytic.extend(ng);
        }
        let loss = |v: &[f64]| {
            let (c, p, n) = split(v);
            let refs: Vec<&[f64]> = n.iter().map(Vec::as_slice).collect();
            negative_sampling_loss(&c, &p, &refs)
        };
        ns_worst = ns_worst.max(rel_err(&analytic, &central_diff(loss, &x, 1e-5)));
    }
    let mut kl_worst = 0.0f64;
    for seed in 0..10 {
        let hi = random_matrix(12, 5, 200 + seed);
        let p = input_affinities(&hi, 4.0);
        let y0 = random_matrix(1, 24, 300 + seed)[0].clone();
        let pts = |v: &[f64]| v.chunks(2).map(|c| [c[0], c[1]]).collect::<Vec<[f64; 2]>>();
        let analytic: Vec<f64> = kl_gradient(&p, &pts(&y0)).into_iter().flatten().collect();
        let numeric = central_diff(|v| kl_divergence(&p, &pts(v)), &y0, 1e-5);
        kl_worst = kl_worst.max(rel_err(&analytic, &numeric));
    }
    ensure!(ns_worst <= 1e-5, "negative-sampling relative error {ns_worst:e}");
    ensure!(kl_worst <= 1e-4, "KL relative error {kl_worst:e}");
    Ok(format!("NS {ns_worst:.1e} ≤ 1e-5, KL {kl_worst:.1e} ≤ 1e-4"))
}

fn labelled_sample_fixture() -> Outcome {
    let audio = &LABELLED_SAMPLES[0..3];
    let transport = &LABELLED_SAMPLES[3..6];
    let intra_a = avg_pairwise_distance(audio).avg_dis;
    let intra_t = avg_pairwise_distance(transport).avg_dis;
    ensure!((intra_a - mean_intra(audio)).abs() <= 1e-12, "library and oracle disagree on group 1");
    ensure!((intra_t - mean_intra(transport)).abs() <= 1e-12, "library and oracle disagree on group 2");
    let cross = mean_cross(audio, transport);
    let margin = cross - intra_a.max(intra_t);
    ensure!(margin > 1e-12, "margin {margin}");
    Ok(format!("intra {intra_a:.4} / {intra_t:.4} < cross {cross:.4}, margin {margin:.4}"))
}

fn kmeans_elbow() -> Outcome {
    for seed in 0..100 {
        let pts = random_points(60, 1000 + seed);
        let k = 2 + (seed as usize % 6);
        let a = kmeans(&pts, k, seed, 100).map_err(|e| e.to_string())?;
        for w in a.inertia_history.windows(2) {
            ensure!(w[1] <= w[0], "seed {seed}: inertia rose {} -> {}", w[0], w[1]);
        }
    }
    let (pts, truth) = blobs(&THREE_BLOB_CENTERS, 30, 0.02, 1);
    let elbow = select_k_elbow(&pts, 8, 1).map_err(|e| e.to_string())?;
    ensure!(elbow.k_best == 3, "elbow chose k = {}", elbow.k_best);
    let best = elbow.best();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            ensure!(
                (best.labels[i] == best.labels[j]) == (truth[i] == truth[j]),
                "partition differs from the blobs at ({i}, {j})"
            );
        }
    }
    let d = random_points(15, 4);
    let full = kmeans(&d, d.len(), 0, 50).map_err(|e| e.to_string())?;
    ensure!(full.inertia == 0.0, "k = D inertia {}", full.inertia);
    Ok("100 monotone runs, elbow k = 3, k = D inertia 0".into())
}

fn analytics_oracles() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let pts = random_points(100, seed);
        worst = worst.max((avg_pairwise_distance(&pts).avg_dis - avg_dis_oracle(&pts)).abs());
        let path = random_points(100, 50 + seed);
        worst = worst.max((path_length(&path) - path_length_oracle(&path)).abs());
        let prior = random_points(100, 200 + seed);
        let new = random_points(100, 300 + seed);
        let got = detect_novel(&new, &prior, 0.95).map_err(|e| e.to_string())?;
        let (flags, dist, theta) = novelty_oracle(&new, &prior, 0.95);
        ensure!(got.flags == flags, "seed {seed}: novelty flags differ");
        worst = worst.max((got.threshold - theta).abs());
        for (a, b) in got.distances.iter().zip(&dist) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure!(worst <= 1e-12, "max deviation {worst:e}");
    Ok(format!("Avg_dis, path length, novelty: max deviation {worst:.1e}"))
}

fn terrain_contract() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..5 {
        let pts = random_points(8, seed);
        let z: Vec<f64> = random_points(8, seed + 100).iter().map(|p| 1.0 + 9.0 * p[0]).collect();
        let grid = build_terrain(&pts, &z, 100, 0.05, Metric::Utility).map_err(|e| e.to_string())?;
        let (lo, hi) = (z.iter().copied().fold(f64::INFINITY, f64::min), z.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        for row in 0..100 {
            for col in 0..100 {
                let idx = grid.index(row, col);
                match kernel_regression_oracle(&pts, &z, 100, 0.05, row, col) {
                    Some(v) => {
                        ensure!(grid.is_supported(idx), "seed {seed} ({row},{col}) should be supported");
                        worst = worst.max((grid.elevation[idx] - v).abs());
                        let e = grid.elevation[idx];
                        ensure!(e >= lo && e <= hi, "seed {seed} ({row},{col}) elevation {e} outside [{lo}, {hi}]");
                    }
                    None => ensure!(!grid.is_supported(idx), "seed {seed} ({row},{col}) should be unsupported"),
                }
            }
        }
    }
    ensure!(worst <= 1e-10, "oracle deviation {worst:e}");
    for (i, p) in random_points(10, 42).into_iter().enumerate() {
        let s = 2.0 + 0.7 * i as f64;
        let grid = build_terrain(&[p], &[s], 100, 0.05, Metric::Utility).map_err(|e| e.to_string())?;
        let peaks = find_peaks(&grid, 0.0);
        ensure!(peaks.len() == 1, "single idea gave {} peaks", peaks.len());
        ensure!((peaks[0].row, peaks[0].col) == grid.nearest_cell(p), "single-idea peak off its cell");
        ensure!((peaks[0].elevation - s).abs() <= 1e-9, "peak {} vs score {s}", peaks[0].elevation);
    }
    let two = build_terrain(&[[0.2, 0.3], [0.8, 0.7]], &[6.0, 6.0], 100, 0.05, Metric::Utility)
        .map_err(|e| e.to_string())?;
    let n = find_peaks(&two, 0.0).len();
    ensure!(n == 2, "two distant ideas gave {n} peaks");
    Ok(format!("oracle deviation {worst:.1e}, single-idea and two-idea peaks exact"))
}

fn node(id: &str, author: usize, raw: f64, secs: i64) -> IdeaNode<f64> {
    IdeaNode {
        id: id.into(),
        author,
        x: 0.0,
        y: 0.0,
        z: 0.0,
        raw_pc1: raw,
        birth: Utc.with_ymd_and_hms(2020, 1, 1, 0, 0, 0).unwrap() + TimeDelta::seconds(secs),
        saturation: 1.0,
    }
}

fn network_contract() -> Outcome {
    let net = build_ring_lattice(26, 4).map_err(|e| e.to_string())?;
    let ring = layout_ring::<f64>(&net).map_err(|e| e.to_string())?;
    for (i, p) in ring.iter().enumerate() {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        ensure!((r - 1.0).abs() <= 1e-12, "node {i} radius {r}");
        let a = p[1].atan2(p[0]).rem_euclid(TAU);
        let d = (a - TAU * i as f64 / 26.0).abs();
        ensure!(d.min(TAU - d) <= 1e-12, "node {i} angle off by {d:e}");
    }

    let session = synth_session(&SynthConfig::new(26, 3, 3, 4).ideas_per_day(2)).map_err(|e| e.to_string())?;
    let proj = random_projections(&session, 10);
    let scene = build_scene(&session, &proj, &SceneConfig::default()).map_err(|e| e.to_string())?;
    for n in &scene.ideas {
        ensure!(n.z == proj.get(&n.id).unwrap().pc1, "idea {} height differs from normalized PC1", n.id);
    }
    let author: BTreeMap<&str, usize> = scene.ideas.iter().map(|n| (n.id.as_str(), n.author)).collect();
    let all_pairs = link_idea_nodes(&scene.ideas, &session.network, LinkPolicy::AllPairs);
    for e in scene.idea_edges.iter().chain(&all_pairs) {
        let (a, b) = (author[e.from.as_str()], author[e.to.as_str()]);
        ensure!(a == b || session.network.are_adjacent(a, b), "edge {} -> {} crosses non-neighbours", e.from, e.to);
    }

    let anim = animate(&scene.ideas, 24, TimeDelta::days(1), 0.2).map_err(|e| e.to_string())?;
    for w in anim.frames.windows(2) {
        ensure!(w[0].visible.iter().all(|id| w[1].visible.contains(id)), "frame {} loses ideas", w[1].index);
        for (id, s0) in w[0].visible.iter().zip(&w[0].saturation) {
            let k = w[1].visible.iter().position(|v| v == id).unwrap();
            ensure!(w[1].saturation[k] <= *s0, "saturation of {id} rose at frame {}", w[1].index);
        }
    }

    let mut values = vec![0.5; 10];
    values.extend([0.51; 9]);
    values.push(5.0);
    let nodes: Vec<_> = values.iter().enumerate().map(|(i, &v)| node(&format!("i{i}"), i, v, i as i64)).collect();
    let report = detect_innovator(&nodes, 3.0).map_err(|e| e.to_string())?;
    ensure!(report.flagged_ideas == vec!["i19".to_string()], "flagged {:?}", report.flagged_ideas);
    Ok(format!(
        "ring exact, {} ideas at PC1 height, {} + {} edges adjacent, 24 monotone frames, outlier i19 flagged",
        scene.ideas.len(),
        scene.idea_edges.len(),
        all_pairs.len()
    ))
}

const E2E_FRAMES: usize = 12;

struct E2eRun {
    data: PathBuf,
    first: PathBuf,
    second: PathBuf,
    seconds: f64,
}

fn ideascope(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ideascope"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("`ideascope {}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)))
    }
}

fn e2e() -> &'static Result<E2eRun, String> {
    static RUN: OnceLock<Result<E2eRun, String>> = OnceLock::new();
    RUN.get_or_init(|| {
        let root = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-e2e");
        let _ = fs::remove_dir_all(&root);
        let data = root.join("data");
        let s = |p: &Path| p.to_str().unwrap().to_string();
        ideascope(&[
            "synth", "--participants", "25", "--days", "4", "--topics", "3", "--seed", "7",
            "--non-contributors", "0.2", "--out", &s(&data),
        ])?;
        let (ideas, network) = (s(&data.join("ideas.jsonl")), s(&data.join("network.json")));
        let start = Instant::now();
        let mut dirs = Vec::new();
        for name in ["run1", "run2"] {
            let out = root.join(name);
            let frames = E2E_FRAMES.to_string();
            ideascope(&[
                "all", "--ideas", &ideas, "--network", &network, "--out", &s(&out), "--seed", "7",
                "--workers", "1", "--frames", &frames,
            ])?;
            dirs.push(out);
        }
        let seconds = start.elapsed().as_secs_f64();
        let second = dirs.pop().unwrap();
        let first = dirs.pop().unwrap();
        Ok(E2eRun { data, first, second, seconds })
    })
}

fn tree(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, acc: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(base, &path, acc);
            } else {
                acc.insert(path.strip_prefix(base).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    let mut acc = BTreeMap::new();
    walk(dir, dir, &mut acc);
    acc
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn end_to_end() -> Outcome {
    let run = e2e().as_ref().map_err(Clone::clone)?;
    let (a, b) = (tree(&run.first), tree(&run.second));
    ensure!(a.len() > 20, "only {} files written", a.len());
    ensure!(a.keys().eq(b.keys()), "file sets differ");
    for (path, bytes) in &a {
        ensure!(bytes == &b[path], "{} differs between runs", path.display());
    }
    ensure!(run.seconds < 180.0, "two runs took {:.1}s", run.seconds);

    let analytics = read_json(&run.first.join("analytics.json"))?;
    let k = analytics["clusters"]["k"].as_u64();
    ensure!(k == Some(3), "cloud stage chose k = {k:?}");

    let session = synth_session(&SynthConfig::new(25, 4, 3, 7).non_contributors(0.2)).map_err(|e| e.to_string())?;
    let planted: Vec<u64> = (0..25).filter(|&p| session.ideas_by(p).next().is_none()).map(|p| p as u64).collect();
    ensure!(!planted.is_empty(), "synthetic session plants no non-contributors");
    let analysis = read_json(&run.first.join("analysis.json"))?;
    let flagged: Vec<u64> = analysis["contributions"]["non_contributors"]
        .as_array()
        .map(|v| v.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    ensure!(flagged == planted, "flagged {flagged:?}, planted {planted:?}");
    let ideas_file = fs::read_to_string(run.data.join("ideas.jsonl")).map_err(|e| e.to_string())?;
    ensure!(ideas_file.lines().count() == session.ideas.len(), "CLI synth differs from the library session");
    Ok(format!(
        "{} files byte-identical, two runs in {:.1}s, k = 3, non-contributors {planted:?}",
        a.len(),
        run.seconds
    ))
}

fn class_count(doc: &roxmltree::Document, tag: &str, class: &str) -> usize {
    doc.descendants()
        .filter(|n| n.has_tag_name(tag) && n.attribute("class").is_some_and(|c| c.split(' ').any(|w| w == class)))
        .count()
}

fn well_formed() -> Outcome {
    let run = e2e().as_ref().map_err(Clone::clone)?;
    let files = tree(&run.first);
    let mut svgs = BTreeMap::new();
    for (path, bytes) in &files {
        if path.extension().is_some_and(|e| e == "svg") {
            let text = String::from_utf8(bytes.clone()).map_err(|_| format!("{} is not UTF-8", path.display()))?;
            {
                let doc = roxmltree::Document::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                let root = doc.root_element();
                ensure!(root.has_tag_name("svg"), "{}: root is not <svg>", path.display());
                ensure!(root.attribute("viewBox").is_some(), "{}: no viewBox", path.display());
            }
            svgs.insert(path.clone(), text);
        }
    }
    ensure!(svgs.len() >= 6 + E2E_FRAMES, "only {} SVG files", svgs.len());

    let schema: Value = serde_json::from_str(SCENE_SCHEMA).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let scene = read_json(&run.first.join("scene.json"))?;
    let errors: Vec<String> = validator.iter_errors(&scene).map(|e| e.to_string()).collect();
    ensure!(errors.is_empty(), "scene.json: {errors:?}");
    let n_ideas = scene["ideas"].as_array().map_or(0, Vec::len);
    ensure!(n_ideas == 100, "scene has {n_ideas} ideas");

    for name in ["cloud.svg", "days.svg", "network.svg"] {
        let doc = roxmltree::Document::parse(&svgs[Path::new(name)]).unwrap();
        let c = class_count(&doc, "circle", "idea");
        ensure!(c == n_ideas, "{name}: {c} idea circles for {n_ideas} ideas");
    }

    let frame_svgs: Vec<_> = svgs.keys().filter(|p| p.starts_with("frames")).collect();
    ensure!(frame_svgs.len() == E2E_FRAMES, "{} frame SVGs for {E2E_FRAMES} requested", frame_svgs.len());
    let index = read_json(&run.first.join("frames").join("index.json"))?;
    let listed = index["frames"].as_array().map_or(0, Vec::len);
    ensure!(listed == E2E_FRAMES, "frame index lists {listed}");
    for f in 0..E2E_FRAMES {
        let spec = read_json(&run.first.join(format!("frames/frame_{f:04}.json")))?;
        let visible = spec["visible"].as_array().map_or(0, Vec::len);
        let svg = &svgs[&PathBuf::from(format!("frames/frame_{f:04}.svg"))];
        let doc = roxmltree::Document::parse(svg).unwrap();
        let c = class_count(&doc, "circle", "idea");
        ensure!(c == visible, "frame {f}: {c} circles for {visible} visible ideas");
    }
    Ok(format!(
        "{} SVGs parse with viewBox, scene.json valid, circle and frame counts match",
        svgs.len()
    ))
}
