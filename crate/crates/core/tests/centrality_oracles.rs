mod support;

use celebnet::centrality::{
    betweenness_values, closeness_values, clustering_values, degree_values, pagerank_values,
    PageRankParams, Topology,
};
use support::{dense_pagerank, naive_betweenness, naive_closeness, naive_clustering, random_graph};

fn graphs() -> impl Iterator<Item = (u64, Topology, Vec<Vec<bool>>)> {
    (0..30u64).map(|seed| {
        let n = 10 + (seed as usize * 7) % 31;
        let (g, adj) = random_graph(n, 0.2, seed);
        (seed, Topology::new(&g), adj)
    })
}

#[test]
fn betweenness_matches_path_enumeration() {
    for (seed, topo, adj) in graphs() {
        let got = betweenness_values(&topo);
        let want = naive_betweenness(&adj);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-9, "seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn closeness_matches_distance_matrix() {
    for (seed, topo, adj) in graphs() {
        for (a, b) in closeness_values(&topo).iter().zip(naive_closeness(&adj)) {
            assert!((a - b).abs() <= 1e-12, "seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn clustering_matches_triangle_count() {
    for (seed, topo, adj) in graphs() {
        assert_eq!(
            clustering_values(&topo),
            naive_clustering(&adj),
            "seed {seed}"
        );
    }
}

#[test]
fn degree_matches_adjacency_rows() {
    for (_, topo, adj) in graphs() {
        let want: Vec<usize> = adj
            .iter()
            .map(|r| r.iter().filter(|&&b| b).count())
            .collect();
        assert_eq!(degree_values(&topo), want);
    }
}

#[test]
fn pagerank_matches_dense_iteration() {
    for (seed, topo, adj) in graphs() {
        let got = pagerank_values(&topo, PageRankParams::default());
        assert!(got.converged);
        let want = dense_pagerank(&adj, 0.85);
        for (a, b) in got.scores.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-8, "seed {seed}: {a} vs {b}");
        }
        assert!((got.scores.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    }
}
