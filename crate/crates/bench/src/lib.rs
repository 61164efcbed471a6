//! Shared inputs for the criterion benchmarks.

use celebnet::synth::{generate, SynthSpec};
use celebnet::{Corpus, EngagementGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi graph over `n` nodes with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> EngagementGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<String> = (0..n).map(|i| format!("n{i:04}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    EngagementGraph::from_topology(&nodes, &edges).expect("valid topology")
}

/// Planted-signal corpus of the given size.
pub fn synthetic_corpus(n_celebrities: usize, n_users: usize, seed: u64) -> Corpus {
    generate(&SynthSpec::planted(n_celebrities, n_users, seed))
        .expect("valid spec")
        .corpus
}
