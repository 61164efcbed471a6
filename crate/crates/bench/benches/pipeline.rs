use std::hint::black_box;

use celebnet::centrality::{betweenness_values, pagerank_values, PageRankParams, Topology};
use celebnet::classify::{cross_validate, Bucket, ClassifierSpec, FeatureMatrix};
use celebnet::corpus::{preprocess_text, StopWords};
use celebnet::pipeline::{Analysis, AnalysisConfig};
use celebnet::resources::default_resources;
use celebnet_bench::{random_graph, synthetic_corpus};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn centrality(c: &mut Criterion) {
    let mut group = c.benchmark_group("centrality");
    for n in [100, 400] {
        let topo = Topology::new(&random_graph(n, 0.05, 7));
        group.bench_with_input(BenchmarkId::new("brandes", n), &topo, |b, t| {
            b.iter(|| betweenness_values(black_box(t)))
        });
        group.bench_with_input(BenchmarkId::new("pagerank", n), &topo, |b, t| {
            b.iter(|| pagerank_values(black_box(t), PageRankParams::default()))
        });
    }
    group.finish();
}

fn preprocessing(c: &mut Criterion) {
    let corpus = synthetic_corpus(60, 600, 3);
    let texts: Vec<&str> = corpus
        .tweets
        .iter()
        .take(2000)
        .map(|t| t.text.as_str())
        .collect();
    let stop = StopWords::english();
    c.bench_function("preprocess_2000_tweets", |b| {
        b.iter(|| {
            texts
                .iter()
                .map(|t| preprocess_text(black_box(t), &stop).len())
                .sum::<usize>()
        })
    });
}

fn classification(c: &mut Criterion) {
    let corpus = synthetic_corpus(300, 3000, 42);
    let a =
        Analysis::run(&corpus, &default_resources(), AnalysisConfig::default()).expect("analysis");
    let y: Vec<Bucket> = a.buckets();
    let x: &FeatureMatrix = &a.matrix;
    c.bench_function("gnb_10fold_300", |b| {
        b.iter(|| cross_validate(black_box(x), &y, ClassifierSpec::Gnb, 10, 42).expect("cv"))
    });
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("analysis_300", |b| {
        b.iter(|| {
            Analysis::run(
                black_box(&corpus),
                &default_resources(),
                AnalysisConfig::default(),
            )
            .expect("run")
        })
    });
    group.finish();
}

criterion_group!(benches, centrality, preprocessing, classification);
criterion_main!(benches);
