//! Independent oracles and fixtures shared by the integration tests and the
//! acceptance suite. Nothing here calls the library's own algorithms.

#![allow(dead_code)]

use celebnet::corpus::{Category, CelebrityProfile, Corpus, TweetRecord};
use celebnet::EngagementGraph;
use chrono::{TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi graph; returns the graph and its adjacency matrix.
pub fn random_graph(n: usize, p: f64, seed: u64) -> (EngagementGraph, Vec<Vec<bool>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<String> = (0..n).map(|i| format!("v{i:03}")).collect();
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                adj[i][j] = true;
                adj[j][i] = true;
                edges.push((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    // isolated vertices are not part of an edge-derived graph
    let keep: Vec<usize> = (0..n).filter(|&i| adj[i].iter().any(|&b| b)).collect();
    let kept_nodes: Vec<String> = keep.iter().map(|&i| nodes[i].clone()).collect();
    let kept_adj = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| adj[i][j]).collect())
        .collect();
    let g = EngagementGraph::from_topology(&kept_nodes, &edges).expect("topology");
    (g, kept_adj)
}

/// All-pairs hop distances by Floyd–Warshall; `usize::MAX` when unreachable.
pub fn floyd(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    for row in &mut d {
        for x in row.iter_mut() {
            if *x >= inf {
                *x = usize::MAX;
            }
        }
    }
    d
}

/// Walk every shortest path from `s` to `t`, adding each interior vertex.
fn walk(
    adj: &[Vec<bool>],
    d: &[Vec<usize>],
    v: usize,
    t: usize,
    path: &mut Vec<usize>,
    hits: &mut [usize],
    paths: &mut usize,
) {
    if v == t {
        *paths += 1;
        for &x in &path[1..path.len() - 1] {
            hits[x] += 1;
        }
        return;
    }
    for w in 0..adj.len() {
        if adj[v][w] && d[w][t] != usize::MAX && d[w][t] + 1 == d[v][t] {
            path.push(w);
            walk(adj, d, w, t, path, hits, paths);
            path.pop();
        }
    }
}

/// Betweenness by enumerating every shortest path of every unordered pair.
pub fn naive_betweenness(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    let d = floyd(adj);
    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == usize::MAX {
                continue;
            }
            let mut hits = vec![0usize; n];
            let mut paths = 0usize;
            walk(adj, &d, s, t, &mut vec![s], &mut hits, &mut paths);
            for v in 0..n {
                out[v] += hits[v] as f64 / paths as f64;
            }
        }
    }
    out
}

/// `(r/(n-1)) * (r/sum d)` over the `r` vertices reachable from each vertex.
pub fn naive_closeness(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    let d = floyd(adj);
    (0..n)
        .map(|v| {
            let reach: Vec<usize> = (0..n)
                .filter(|&u| u != v && d[v][u] != usize::MAX)
                .map(|u| d[v][u])
                .collect();
            if reach.is_empty() {
                return 0.0;
            }
            let r = reach.len() as f64;
            let s: usize = reach.iter().sum();
            (r / (n - 1) as f64) * (r / s as f64)
        })
        .collect()
}

/// Triangles through each vertex over all vertex triples.
pub fn naive_clustering(adj: &[Vec<bool>]) -> Vec<f64> {
    let n = adj.len();
    (0..n)
        .map(|v| {
            let k = (0..n).filter(|&u| adj[v][u]).count();
            if k < 2 {
                return 0.0;
            }
            let mut tri = 0usize;
            for a in 0..n {
                for b in a + 1..n {
                    if adj[v][a] && adj[v][b] && adj[a][b] {
                        tri += 1;
                    }
                }
            }
            tri as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

/// Dense Google-matrix power iteration, run until the iterate stops moving.
pub fn dense_pagerank(adj: &[Vec<bool>], damping: f64) -> Vec<f64> {
    let n = adj.len();
    let nf = n as f64;
    let mut g = vec![vec![0.0; n]; n];
    for j in 0..n {
        let deg = adj[j].iter().filter(|&&b| b).count();
        for i in 0..n {
            let m = if deg == 0 {
                1.0 / nf
            } else if adj[j][i] {
                1.0 / deg as f64
            } else {
                0.0
            };
            g[i][j] = damping * m + (1.0 - damping) / nf;
        }
    }
    let mut x = vec![1.0 / nf; n];
    for _ in 0..10_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| g[i][j] * x[j]).sum())
            .collect();
        let delta: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if delta < 1e-15 {
            break;
        }
    }
    x
}

/// Descending ranks with ties averaged, by direct counting.
pub fn naive_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, &a)| {
            let above = x.iter().filter(|&&b| b > a).count() as f64;
            let tied = x
                .iter()
                .enumerate()
                .filter(|&(j, &b)| j != i && b == a)
                .count() as f64;
            1.0 + above + tied / 2.0
        })
        .collect()
}

/// Two-pass textbook Pearson coefficient.
pub fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

pub fn naive_spearman(x: &[f64], y: &[f64]) -> f64 {
    naive_pearson(&naive_ranks(x), &naive_ranks(y))
}

/// Reference stems for a sample of the published Porter test vocabulary.
pub const PORTER_SAMPLE: [(&str, &str); 40] = [
    ("caresses", "caress"),
    ("ponies", "poni"),
    ("ties", "ti"),
    ("caress", "caress"),
    ("cats", "cat"),
    ("feed", "feed"),
    ("agreed", "agre"),
    ("plastered", "plaster"),
    ("motoring", "motor"),
    ("sing", "sing"),
    ("conflated", "conflat"),
    ("troubled", "troubl"),
    ("sized", "size"),
    ("hopping", "hop"),
    ("tanned", "tan"),
    ("falling", "fall"),
    ("hissing", "hiss"),
    ("fizzed", "fizz"),
    ("failing", "fail"),
    ("filing", "file"),
    ("happy", "happi"),
    ("sky", "sky"),
    ("relational", "relat"),
    ("conditional", "condit"),
    ("rational", "ration"),
    ("valenci", "valenc"),
    ("digitizer", "digit"),
    ("radicalli", "radic"),
    ("vietnamization", "vietnam"),
    ("predication", "predic"),
    ("operator", "oper"),
    ("feudalism", "feudal"),
    ("hopefulness", "hope"),
    ("sensibiliti", "sensibl"),
    ("triplicate", "triplic"),
    ("formative", "form"),
    ("revival", "reviv"),
    ("adjustable", "adjust"),
    ("generalizations", "gener"),
    ("oscillators", "oscil"),
];

/// Hand-built corpus: three celebrities and twenty users.
///
/// Retweeters: a <- u01..u12, b <- u05..u16, c <- u10..u20.
/// Common retweeters: a-b 8 (u05..u12), a-c 3 (u10..u12), b-c 7 (u10..u16).
///
/// Mentioners: a <- u01..u06, b <- u01..u10, c <- u03..u08, plus u20 who
/// mentions a and b once, in the same tweet.
/// Common mentioners: a-b 7 (u01..u06, u20), a-c 4 (u03..u06), b-c 6 (u03..u08).
pub fn fixture_corpus() -> Corpus {
    let t0 = Utc.with_ymd_and_hms(2017, 3, 1, 0, 0, 0).unwrap();
    let mut tweets = Vec::new();
    let mut id = 0;
    let mut push = |author: String, text: String, retweet_of: Option<&str>, mentions: &[&str]| {
        id += 1;
        tweets.push(TweetRecord {
            id: format!("t{id:04}"),
            author,
            text,
            timestamp: t0,
            retweet_of: retweet_of.map(str::to_string),
            mentions: mentions.iter().map(|m| m.to_string()).collect(),
        });
    };
    for c in ["a", "b", "c"] {
        push(c.to_string(), format!("hello from {c}"), None, &[]);
    }
    let user = |u: usize| format!("u{u:02}");
    let retweeters = [("a", 1..=12), ("b", 5..=16), ("c", 10..=20)];
    for (c, range) in retweeters {
        for u in range {
            push(user(u), format!("RT @{c}: hello from {c}"), Some(c), &[]);
        }
    }
    // repeated retweets must not change counts
    push(user(5), "RT @a: hello from a".into(), Some("a"), &[]);
    let mentioners = [("a", 1..=6), ("b", 1..=10), ("c", 3..=8)];
    for (c, range) in mentioners {
        for u in range {
            push(user(u), format!("@{c} nice"), None, &[c]);
        }
    }
    push(user(20), "@a @b together".into(), None, &["a", "b"]);
    // self mention and a celebrity mentioner are ignored by default
    push("a".into(), "@b hi".into(), None, &["b"]);
    let roster = ["a", "b", "c"]
        .iter()
        .enumerate()
        .map(|(i, h)| CelebrityProfile {
            handle: h.to_string(),
            category: Category::Music,
            followers_future: 1000 * (i as u64 + 1),
        })
        .collect();
    Corpus { tweets, roster }
}

/// Three Gaussian classes in `d` dimensions whose means sit `sep` standard
/// deviations apart along the first coordinate; `n_per` rows each.
pub fn gaussian_classes(
    n_per: usize,
    d: usize,
    sep: f64,
    seed: u64,
) -> (Vec<Vec<f64>>, Vec<usize>) {
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for class in 0..3 {
        for _ in 0..n_per {
            let row: Vec<f64> = (0..d)
                .map(|j| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    if j == 0 {
                        z + sep * class as f64
                    } else {
                        z
                    }
                })
                .collect();
            rows.push(row);
            labels.push(class);
        }
    }
    (rows, labels)
}
