//! Independent reference implementations and fixtures shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Cyclic Jacobi eigensolver for a symmetric row-major matrix.
/// Returns eigenvalues descending and eigenvectors as rows.
pub fn jacobi_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| a[i * n..(i + 1) * n].to_vec()).collect();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    let norm: f64 = a.iter().flatten().map(|x| x * x).sum();
    for _ in 0..200 {
        let off: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off <= 1e-32 * norm.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (a[p][k], a[q][k]);
                    a[p][k] = c * pk - s * qk;
                    a[q][k] = s * pk + c * qk;
                }
                for row in v.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (values, vectors)
}

/// Flips `v` so its largest-magnitude entry (first on ties) is positive.
pub fn sign_fix(mut v: Vec<f64>) -> Vec<f64> {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Sample covariance (divisor D − 1), row-major.
pub fn covariance(rows: &[Vec<f64>]) -> Vec<f64> {
    let d = rows.len() as f64;
    let m = rows[0].len();
    let mean: Vec<f64> = (0..m).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / d).collect();
    let mut c = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            c[i * m + j] = rows.iter().map(|r| (r[i] - mean[i]) * (r[j] - mean[j])).sum::<f64>() / (d - 1.0);
        }
    }
    c
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}

pub fn random_points(n: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect()
}

fn d(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Mean over ordered pairs i ≠ j, halved back to unordered.
pub fn avg_dis_oracle(p: &[[f64; 2]]) -> f64 {
    let n = p.len();
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += d(p[i], p[j]);
            }
        }
    }
    s / (n * (n - 1)) as f64
}

pub fn path_length_oracle(p: &[[f64; 2]]) -> f64 {
    let mut s = 0.0;
    for i in 1..p.len() {
        s += d(p[i - 1], p[i]);
    }
    s
}

/// Exhaustive nearest-neighbour novelty scan with an explicit
/// linear-interpolation quantile.
pub fn novelty_oracle(new: &[[f64; 2]], prior: &[[f64; 2]], q: f64) -> (Vec<bool>, Vec<f64>, f64) {
    let mut loo = Vec::new();
    for i in 0..prior.len() {
        let mut best = f64::INFINITY;
        for j in 0..prior.len() {
            if i != j {
                best = best.min(d(prior[i], prior[j]));
            }
        }
        if best.is_finite() {
            loo.push(best);
        }
    }
    loo.sort_by(f64::total_cmp);
    let theta = if loo.is_empty() {
        0.0
    } else {
        let pos = q * (loo.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        loo[lo] + (loo[hi] - loo[lo]) * (pos - lo as f64)
    };
    let dist: Vec<f64> = new
        .iter()
        .map(|&p| prior.iter().map(|&r| d(p, r)).fold(f64::INFINITY, f64::min))
        .collect();
    (dist.iter().map(|&x| x > theta).collect(), dist, theta)
}

/// Direct Nadaraya–Watson evaluation at grid node `(row, col)`.
pub fn kernel_regression_oracle(points: &[[f64; 2]], z: &[f64], g: usize, h: f64, row: usize, col: usize) -> Option<f64> {
    let x = col as f64 / (g - 1) as f64;
    let y = row as f64 / (g - 1) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (p, &zi) in points.iter().zip(z) {
        let u2 = ((x - p[0]).powi(2) + (y - p[1]).powi(2)) / (h * h);
        let w = (-u2 / 2.0).exp();
        num += w * zi;
        den += w;
    }
    (den >= 1e-12).then(|| num / den)
}

/// `n` points per blob, Gaussian with standard deviation `sigma`.
pub fn blobs(centers: &[[f64; 2]], n: usize, sigma: f64, seed: u64) -> (Vec<[f64; 2]>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).unwrap();
    let mut pts = Vec::new();
    let mut truth = Vec::new();
    for (b, c) in centers.iter().enumerate() {
        for _ in 0..n {
            pts.push([c[0] + normal.sample(&mut rng), c[1] + normal.sample(&mut rng)]);
            truth.push(b);
        }
    }
    (pts, truth)
}

pub const THREE_BLOB_CENTERS: [[f64; 2]; 3] = [[0.2, 0.2], [0.8, 0.25], [0.5, 0.8]];

/// Relative error ‖a − b‖ / max(‖a‖, ‖b‖, tiny).
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff / na.max(nb).max(1e-300)
}

/// Central differences of `f` at `x` with step `h`.
pub fn central_diff(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut x = x.to_vec();
    (0..x.len())
        .map(|i| {
            let orig = x[i];
            x[i] = orig + h;
            let up = f(&x);
            x[i] = orig - h;
            let down = f(&x);
            x[i] = orig;
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// PCA coordinates of ten labelled sample ideas: 1–3 audio devices,
/// 4–6 transportation, 7–8 music players, 9–10 cameras.
pub const LABELLED_SAMPLES: [[f64; 2]; 10] = [
    [0.7284, 0.5761],
    [0.7593, 0.5374],
    [0.7693, 0.5237],
    [0.6227, 0.4489],
    [0.6388, 0.5481],
    [0.6490, 0.5060],
    [0.5796, 0.5707],
    [0.5905, 0.4884],
    [0.6528, 0.5940],
    [0.6596, 0.5445],
];

pub fn mean_intra(p: &[[f64; 2]]) -> f64 {
    avg_dis_oracle(p)
}

pub fn mean_cross(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let mut s = 0.0;
    for &x in a {
        for &y in b {
            s += d(x, y);
        }
    }
    s / (a.len() * b.len()) as f64
}

/// Forty-document corpus over two disjoint vocabularies, with each
/// document's topic recovered from vocabulary membership.
pub fn two_topic_corpus() -> (Vec<Vec<String>>, Vec<usize>) {
    use ideascope_core::embed::tokenize;
    use ideascope_core::ingest::{synth_session, topic_vocabulary, SynthConfig};
    let session = synth_session(&SynthConfig::new(20, 2, 2, 1).final_ideas(0)).unwrap();
    let vocab: Vec<Vec<String>> = (0..2).map(|t| topic_vocabulary(t, 8)).collect();
    let docs: Vec<Vec<String>> = session.ideas.iter().map(|i| tokenize(&i.text)).collect();
    let topics = docs
        .iter()
        .map(|d| {
            let word = d.iter().find(|w| vocab[0].contains(w) || vocab[1].contains(w)).unwrap();
            usize::from(vocab[1].contains(word))
        })
        .collect();
    (docs, topics)
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Share of documents whose cosine nearest neighbour has the same topic,
/// plus mean intra- and inter-topic cosine.
pub fn separation(vectors: &[Vec<f64>], topics: &[usize]) -> (f64, f64, f64) {
    let n = vectors.len();
    let mut hits = 0;
    let (mut intra, mut ni, mut inter, mut nx) = (0.0, 0, 0.0, 0);
    for i in 0..n {
        let mut best = (f64::NEG_INFINITY, 0);
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = cosine(&vectors[i], &vectors[j]);
            if c > best.0 {
                best = (c, j);
            }
            if topics[i] == topics[j] {
                intra += c;
                ni += 1;
            } else {
                inter += c;
                nx += 1;
            }
        }
        hits += usize::from(topics[best.1] == topics[i]);
    }
    (hits as f64 / n as f64, intra / ni as f64, inter / nx as f64)
}

/// Session whose daily clouds shrink around a common centre: day `d`
/// scatters `per_day` ideas uniformly within radius `0.4 / (d + 1)`.
/// Projections carry these positions directly as normalized coordinates.
pub fn contracting_session(
    days: usize,
    per_day: usize,
    seed: u64,
) -> (ideascope_core::ingest::Session, ideascope_core::ProjectionSet) {
    use chrono::{TimeDelta, TimeZone, Utc};
    use ideascope_core::dimred::{ProjectedIdea, ProjectionSet};
    use ideascope_core::ingest::{build_ring_lattice, validate_session, IdeaKind, IdeaRecord};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Utc.with_ymd_and_hms(2020, 1, 1, 0, 0, 0).unwrap();
    let mut ideas = Vec::new();
    let mut items = Vec::new();
    for day in 0..days {
        let radius = 0.4 / (day + 1) as f64;
        for j in 0..per_day {
            let id = format!("d{day}-{j}");
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let r = radius * rng.random::<f64>().sqrt();
            let p = [0.5 + r * angle.cos(), 0.5 + r * angle.sin()];
            ideas.push(IdeaRecord {
                id: id.clone(),
                participant: j % 6,
                timestamp: start + TimeDelta::hours(24 * day as i64) + TimeDelta::minutes(j as i64),
                text: "a -> b".into(),
                kind: IdeaKind::Daily,
                scores: vec![],
            });
            items.push(ProjectedIdea { id, pc1_raw: p[0], pc2_raw: p[1], pc1: p[0], pc2: p[1] });
        }
    }
    let session = validate_session(ideas, build_ring_lattice(6, 2).unwrap(), TimeDelta::hours(24)).unwrap();
    (session, ProjectionSet::from_items(items).unwrap())
}

/// Random projections for every idea of `session`.
pub fn random_projections(session: &ideascope_core::ingest::Session, seed: u64) -> ideascope_core::ProjectionSet {
    let ids: Vec<String> = session.ideas.iter().map(|i| i.id.clone()).collect();
    let raw: Vec<[f64; 2]> = random_points(ids.len(), seed).iter().map(|p| [p[0] * 4.0 - 2.0, p[1] * 3.0]).collect();
    ideascope_core::ProjectionSet::from_raw(&ids, &raw).unwrap()
}
