//! Subcommand implementations. Every command writes its artifacts under the
//! output directory and prints a short summary to stdout.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use celebnet::centrality::{centrality_report_with, write_report_csv};
use celebnet::classify::{feature_subset, write_labels_csv, ClassifierSpec};
use celebnet::corpus::{load_corpus, Corpus, LoadStats};
use celebnet::graph::build_graph;
use celebnet::linguistic::{write_profiles_csv, LinguisticResources};
use celebnet::pipeline::{linguistic_profiles, Analysis, Networks};
use celebnet::report::{accuracy_grid, render_report, retweet_density_table, write_ard_csv};
use celebnet::resources::load_resources;
use celebnet::stats::write_correlations_csv;
use celebnet::synth::{generate, SynthSpec};
use celebnet::{Error, Flavor};

use crate::config::PipelineConfig;

fn create(dir: &Path, name: &str) -> anyhow::Result<BufWriter<File>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

/// Write one artifact and report its path.
fn emit(
    dir: &Path,
    name: &str,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> anyhow::Result<PathBuf> {
    let mut w = create(dir, name)?;
    body(&mut w)
        .and_then(|_| w.flush())
        .with_context(|| format!("writing {name}"))?;
    let path = dir.join(name);
    println!("wrote {}", path.display());
    Ok(path)
}

fn corpus(cfg: &PipelineConfig) -> anyhow::Result<(Corpus, LoadStats)> {
    let (tweets, roster) = cfg.inputs()?;
    Ok(load_corpus(tweets, roster)?)
}

fn resources(cfg: &PipelineConfig) -> anyhow::Result<LinguisticResources> {
    Ok(load_resources(cfg.resource_paths(), cfg.linguistic())?)
}

fn analysis(cfg: &PipelineConfig) -> anyhow::Result<(Corpus, Analysis)> {
    let (corpus, _) = corpus(cfg)?;
    let res = resources(cfg)?;
    let a = Analysis::run(&corpus, &res, cfg.analysis())?;
    Ok((corpus, a))
}

pub fn ingest(cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (corpus, stats) = corpus(cfg)?;
    println!("tweets read: {}", stats.read);
    println!("tweets kept: {}", corpus.tweets.len());
    println!("dropped invalid: {}", stats.invalid);
    println!("dropped duplicate ids: {}", stats.duplicates);
    println!("roster celebrities: {}", corpus.roster.len());
    println!(
        "celebrity-authored tweets: {}",
        corpus.celebrity_tweet_count()
    );
    let mut stdout = std::io::stdout().lock();
    write_ard_csv(&mut stdout, &corpus)?;
    drop(stdout);
    debug_assert_eq!(retweet_density_table(&corpus).len(), 5);
    emit(&cfg.out_dir, "ard.csv", |w| write_ard_csv(w, &corpus))?;
    Ok(())
}

pub fn graph(cfg: &PipelineConfig, flavor: Flavor) -> anyhow::Result<()> {
    let (corpus, _) = corpus(cfg)?;
    let g = build_graph(&corpus, flavor, cfg.analysis().graph_options());
    println!(
        "{} network: {} nodes, {} edges",
        flavor.as_str(),
        g.nodes.len(),
        g.edges.len()
    );
    emit(
        &cfg.out_dir,
        &format!("graph_{}.csv", flavor.as_str()),
        |w| g.write_csv(w),
    )?;
    Ok(())
}

pub fn centrality(cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (corpus, _) = corpus(cfg)?;
    let a = cfg.analysis();
    let nets = Networks::build(&corpus, &a);
    for flavor in [Flavor::Retweet, Flavor::Mention] {
        let report = centrality_report_with(nets.get(flavor), a.pagerank_params());
        emit(
            &cfg.out_dir,
            &format!("centrality_{}.csv", flavor.as_str()),
            |w| write_report_csv(w, &report),
        )?;
    }
    Ok(())
}

pub fn features(cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (corpus, _) = corpus(cfg)?;
    let res = resources(cfg)?;
    let (profiles, skipped) = linguistic_profiles(&corpus, &res)?;
    for (h, why) in &skipped {
        eprintln!("skipped {h}: {why}");
    }
    println!("profiles: {}", profiles.len());
    emit(&cfg.out_dir, "features.csv", |w| {
        write_profiles_csv(w, &profiles)
    })?;
    Ok(())
}

pub fn correlate(cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (_, a) = analysis(cfg)?;
    let corr = a.correlations()?;
    let agg = a.bucket_aggregates()?;
    println!("celebrities analysed: {}", a.matrix.n());
    if !corr.undefined.is_empty() {
        println!("constant features: {}", corr.undefined.join(", "));
    }
    emit(&cfg.out_dir, "correlations.csv", |w| {
        write_correlations_csv(w, &corr.entries)
    })?;
    emit(&cfg.out_dir, "bucket_aggregates.csv", |w| agg.write_csv(w))?;
    Ok(())
}

pub fn classify(cfg: &PipelineConfig, features: &str, classifier: &str) -> anyhow::Result<()> {
    // reject bad names before the expensive stages run
    feature_subset(features)?;
    let spec: ClassifierSpec = classifier.parse()?;
    let (_, a) = analysis(cfg)?;
    let r = a.classify(features, spec)?;
    println!(
        "{} on {}: mean accuracy {:.4} ({} folds, {} celebrities)",
        spec.name(),
        features,
        r.mean_accuracy,
        r.fold_accuracies.len(),
        r.n()
    );
    for (f, acc) in r.fold_accuracies.iter().enumerate() {
        println!("  fold {:>2}: {acc:.4}", f + 1);
    }
    emit(
        &cfg.out_dir,
        &format!("cv_{features}_{}.json", spec.name()),
        |w| writeln!(w, "{}", r.to_json()),
    )?;
    Ok(())
}

pub fn report(cfg: &PipelineConfig) -> anyhow::Result<()> {
    let (corpus, a) = analysis(cfg)?;
    let grid = accuracy_grid(&a)?;
    let md = render_report(&corpus, &a, &grid)?;
    emit(&cfg.out_dir, "report.md", |w| w.write_all(md.as_bytes()))?;
    emit(&cfg.out_dir, "matrix.csv", |w| a.matrix.write_csv(w))?;
    emit(&cfg.out_dir, "labels.csv", |w| {
        write_labels_csv(w, &a.labels)
    })?;
    Ok(())
}

pub struct SynthArgs {
    pub spec: Option<PathBuf>,
    pub n_celebrities: usize,
    pub n_users: usize,
    pub null: bool,
}

pub fn synth(cfg: &PipelineConfig, args: &SynthArgs) -> anyhow::Result<()> {
    let spec = match &args.spec {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.clone(),
                source: e,
            })?;
            SynthSpec::from_json(&text)?
        }
        None if args.null => SynthSpec::null(args.n_celebrities, args.n_users, cfg.seed),
        None => SynthSpec::planted(args.n_celebrities, args.n_users, cfg.seed),
    };
    let s = generate(&spec)?;
    s.write_to_dir(&cfg.out_dir)?;
    println!(
        "generated {} celebrities, {} tweets into {}",
        s.corpus.roster.len(),
        s.corpus.tweets.len(),
        cfg.out_dir.display()
    );
    Ok(())
}
