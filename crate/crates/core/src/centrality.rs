//! Node centrality measures on an [`EngagementGraph`].
//!
//! All measures treat the graph as unweighted and undirected; edge weights
//! are only used by the optional weighted PageRank.

use std::collections::{HashMap, VecDeque};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::fmt::sig10;
use crate::graph::EngagementGraph;

/// Index-based adjacency view of a graph.
#[derive(Debug, Clone)]
pub struct Topology {
    pub handles: Vec<String>,
    pub adj: Vec<Vec<usize>>,
    /// Edge weight parallel to `adj`.
    pub weights: Vec<Vec<f64>>,
}

impl Topology {
    pub fn new(graph: &EngagementGraph) -> Self {
        let index: HashMap<&str, usize> = graph
            .nodes
            .iter()
            .enumerate()
            .map(|(i, h)| (h.as_str(), i))
            .collect();
        let n = graph.nodes.len();
        let mut adj = vec![Vec::new(); n];
        let mut weights = vec![Vec::new(); n];
        for e in &graph.edges {
            let (a, b) = (index[e.source.as_str()], index[e.target.as_str()]);
            adj[a].push(b);
            adj[b].push(a);
            weights[a].push(e.weight);
            weights[b].push(e.weight);
        }
        Self {
            handles: graph.nodes.clone(),
            adj,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

fn by_handle<T: Copy>(topo: &Topology, values: &[T]) -> HashMap<String, T> {
    topo.handles
        .iter()
        .cloned()
        .zip(values.iter().copied())
        .collect()
}

/// Brandes betweenness, unnormalized, each unordered pair counted once.
pub fn betweenness_values(topo: &Topology) -> Vec<f64> {
    let n = topo.len();
    // Per-source dependency vectors are reduced in source order so the sum is
    // independent of how rayon schedules the sources.
    let partials: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| single_source_dependency(topo, s))
        .collect();
    let mut bc = vec![0.0; n];
    for delta in &partials {
        for (b, d) in bc.iter_mut().zip(delta) {
            *b += d;
        }
    }
    for b in &mut bc {
        *b /= 2.0;
    }
    bc
}

fn single_source_dependency(topo: &Topology, s: usize) -> Vec<f64> {
    let n = topo.len();
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    sigma[s] = 1.0;
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for &w in &topo.adj[v] {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    while let Some(w) = stack.pop() {
        for &v in &preds[w] {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
    }
    delta[s] = 0.0;
    delta
}

pub fn betweenness(graph: &EngagementGraph) -> HashMap<String, f64> {
    let topo = Topology::new(graph);
    by_handle(&topo, &betweenness_values(&topo))
}

/// Closeness scaled by the reachable fraction of the graph, so that nodes in
/// small components are not over-rated: `(r/(n-1)) * (r/s)`.
pub fn closeness_values(topo: &Topology) -> Vec<f64> {
    let n = topo.len();
    (0..n)
        .into_par_iter()
        .map(|v| {
            let (r, s) = topo
                .bfs_distances(v)
                .iter()
                .flatten()
                .filter(|&&d| d > 0)
                .fold((0usize, 0usize), |(r, s), &d| (r + 1, s + d));
            if r == 0 {
                0.0
            } else {
                (r as f64 / (n - 1) as f64) * (r as f64 / s as f64)
            }
        })
        .collect()
}

pub fn closeness(graph: &EngagementGraph) -> HashMap<String, f64> {
    let topo = Topology::new(graph);
    by_handle(&topo, &closeness_values(&topo))
}

pub fn degree_values(topo: &Topology) -> Vec<usize> {
    topo.adj.iter().map(Vec::len).collect()
}

pub fn degree(graph: &EngagementGraph) -> HashMap<String, usize> {
    let topo = Topology::new(graph);
    by_handle(&topo, &degree_values(&topo))
}

/// Local clustering coefficient; nodes of degree < 2 get 0.
pub fn clustering_values(topo: &Topology) -> Vec<f64> {
    let n = topo.len();
    let mut marked = vec![false; n];
    let mut out = vec![0.0; n];
    for (nbrs, slot) in topo.adj.iter().zip(out.iter_mut()) {
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        for &u in nbrs {
            marked[u] = true;
        }
        let mut links = 0usize;
        for &u in nbrs {
            links += topo.adj[u].iter().filter(|&&w| marked[w]).count();
        }
        for &u in nbrs {
            marked[u] = false;
        }
        // each neighbour-neighbour link was seen from both ends
        let triangles = links / 2;
        *slot = triangles as f64 / (k * (k - 1) / 2) as f64;
    }
    out
}

pub fn clustering_coefficient(graph: &EngagementGraph) -> HashMap<String, f64> {
    let topo = Topology::new(graph);
    by_handle(&topo, &clustering_values(&topo))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Use edge weights as arc strengths.
    pub weighted: bool,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-10,
            max_iter: 200,
            weighted: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    pub scores: Vec<f64>,
    pub iterations: usize,
    /// False when `max_iter` was reached before the L1 change fell below `tol`.
    pub converged: bool,
}

/// Power-iteration PageRank; each undirected edge is a pair of arcs and
/// dangling nodes spread their mass uniformly.
pub fn pagerank_values(topo: &Topology, params: PageRankParams) -> PageRankResult {
    let n = topo.len();
    if n == 0 {
        return PageRankResult {
            scores: Vec::new(),
            iterations: 0,
            converged: true,
        };
    }
    let nf = n as f64;
    let out_strength: Vec<f64> = (0..n)
        .map(|v| {
            if params.weighted {
                topo.weights[v].iter().sum()
            } else {
                topo.adj[v].len() as f64
            }
        })
        .collect();
    let mut scores = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = (0..n)
            .filter(|&v| out_strength[v] == 0.0)
            .map(|v| scores[v])
            .sum();
        let base = (1.0 - params.damping) / nf + params.damping * dangling / nf;
        next.iter_mut().for_each(|x| *x = base);
        for v in 0..n {
            if out_strength[v] == 0.0 {
                continue;
            }
            let share = params.damping * scores[v] / out_strength[v];
            for (i, &w) in topo.adj[v].iter().enumerate() {
                let arc = if params.weighted {
                    topo.weights[v][i]
                } else {
                    1.0
                };
                next[w] += share * arc;
            }
        }
        let change: f64 = scores.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut scores, &mut next);
        if change < params.tol {
            converged = true;
            break;
        }
    }
    let total: f64 = scores.iter().sum();
    scores.iter_mut().for_each(|x| *x /= total);
    PageRankResult {
        scores,
        iterations,
        converged,
    }
}

/// PageRank keyed by handle, plus the convergence flag.
pub fn pagerank(graph: &EngagementGraph, params: PageRankParams) -> (HashMap<String, f64>, bool) {
    let topo = Topology::new(graph);
    let res = pagerank_values(&topo, params);
    (by_handle(&topo, &res.scores), res.converged)
}

/// The five measures for one node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityVector {
    pub handle: String,
    pub c_bet: f64,
    pub c_clo: f64,
    pub c_deg: usize,
    pub clust_coff: f64,
    pub c_pr: f64,
}

impl CentralityVector {
    pub const MEASURES: [&'static str; 5] = ["c_bet", "c_clo", "c_deg", "clust_coff", "c_pr"];

    /// Values in [`CentralityVector::MEASURES`] order.
    pub fn values(&self) -> [f64; 5] {
        [
            self.c_bet,
            self.c_clo,
            self.c_deg as f64,
            self.clust_coff,
            self.c_pr,
        ]
    }
}

/// All five measures for every node, ordered by handle.
pub fn centrality_report(graph: &EngagementGraph) -> Vec<CentralityVector> {
    centrality_report_with(graph, PageRankParams::default())
}

pub fn centrality_report_with(
    graph: &EngagementGraph,
    params: PageRankParams,
) -> Vec<CentralityVector> {
    let topo = Topology::new(graph);
    let bet = betweenness_values(&topo);
    let clo = closeness_values(&topo);
    let deg = degree_values(&topo);
    let clu = clustering_values(&topo);
    let pr = pagerank_values(&topo, params).scores;
    // graph.nodes is sorted, so index order is handle order
    (0..topo.len())
        .map(|i| CentralityVector {
            handle: topo.handles[i].clone(),
            c_bet: bet[i],
            c_clo: clo[i],
            c_deg: deg[i],
            clust_coff: clu[i],
            c_pr: pr[i],
        })
        .collect()
}

/// CSV `handle,c_bet,c_clo,c_deg,clust_coff,c_pr` with 10 significant digits.
pub fn write_report_csv(w: impl Write, report: &[CentralityVector]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["handle", "c_bet", "c_clo", "c_deg", "clust_coff", "c_pr"])?;
    for v in report {
        wtr.write_record([
            v.handle.clone(),
            sig10(v.c_bet),
            sig10(v.c_clo),
            v.c_deg.to_string(),
            sig10(v.clust_coff),
            sig10(v.c_pr),
        ])?;
    }
    wtr.flush()
}
