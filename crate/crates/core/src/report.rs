//! Markdown report mirroring the analysis tables, plus the retweet-density
//! summary used by `ingest`.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use crate::centrality::CentralityVector;
use crate::classify::{accuracy_grid_markdown, feature_subsets, ClassifierSpec, CvReport};
use crate::corpus::{Category, Corpus, RetweetCounts};
use crate::error::Result;
use crate::fmt::{markdown_table, sig10};
use crate::graph::Flavor;
use crate::linguistic::LIWC_PREFIX;
use crate::pipeline::Analysis;
use crate::stats::{correlation_markdown, CorrelationEntry};

/// Per-category retweet counts and density. Categories without authored
/// tweets get density 0.
pub fn retweet_density_table(corpus: &Corpus) -> Vec<(Category, RetweetCounts, f64)> {
    Category::ALL
        .iter()
        .map(|&c| {
            let counts = corpus.retweet_counts(c);
            let ard = if counts.authored == 0 {
                0.0
            } else {
                counts.retweets as f64 / counts.authored as f64
            };
            (c, counts, ard)
        })
        .collect()
}

/// CSV `category,celebrities,authored,retweets,ard`.
pub fn write_ard_csv(w: impl Write, corpus: &Corpus) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["category", "celebrities", "authored", "retweets", "ard"])?;
    for (c, counts, ard) in retweet_density_table(corpus) {
        wtr.write_record([
            c.as_str().to_string(),
            counts.celebrities.to_string(),
            counts.authored.to_string(),
            counts.retweets.to_string(),
            sig10(ard),
        ])?;
    }
    wtr.flush()
}

/// Cross-validate every classifier on every feature set, in table order.
pub fn accuracy_grid(analysis: &Analysis) -> Result<Vec<CvReport>> {
    let jobs: Vec<(&'static str, ClassifierSpec)> = ClassifierSpec::all()
        .into_iter()
        .flat_map(|c| feature_subsets().into_iter().map(move |s| (s.name, c)))
        .collect();
    jobs.par_iter()
        .map(|(set, c)| analysis.classify(set, *c))
        .collect()
}

fn network_table(entries: &[CorrelationEntry]) -> String {
    let rho = |name: String| {
        entries
            .iter()
            .find(|e| e.feature == name)
            .map_or("-".to_string(), |e| format!("{:.4}", e.rho))
    };
    let rows: Vec<Vec<String>> = CentralityVector::MEASURES
        .iter()
        .map(|m| {
            vec![
                m.to_string(),
                rho(format!("{}_{m}", Flavor::Retweet.prefix())),
                rho(format!("{}_{m}", Flavor::Mention.prefix())),
            ]
        })
        .collect();
    markdown_table(&["Measure", "Retweet network", "Mention network"], &rows)
}

/// Render the full markdown report from a finished analysis and its
/// accuracy grid.
pub fn render_report(corpus: &Corpus, analysis: &Analysis, grid: &[CvReport]) -> Result<String> {
    let corr = analysis.correlations()?;
    let agg = analysis.bucket_aggregates()?;
    let mut out = String::new();
    let mut section = |title: &str, body: String| {
        let _ = write!(out, "## {title}\n\n{body}\n");
    };

    let (rt, men) = (&analysis.networks.retweet, &analysis.networks.mention);
    let dataset = markdown_table(
        &["Quantity", "Value"],
        &[
            vec!["Tweets".to_string(), corpus.tweets.len().to_string()],
            vec!["Roster celebrities".into(), corpus.roster.len().to_string()],
            vec![
                "Celebrity-authored tweets".into(),
                corpus.celebrity_tweet_count().to_string(),
            ],
            vec![
                "Retweet network nodes / edges".into(),
                format!("{} / {}", rt.nodes.len(), rt.edges.len()),
            ],
            vec![
                "Mention network nodes / edges".into(),
                format!("{} / {}", men.nodes.len(), men.edges.len()),
            ],
            vec![
                "Celebrities analysed".into(),
                analysis.matrix.n().to_string(),
            ],
            vec![
                "Edge threshold".into(),
                analysis.config.threshold.to_string(),
            ],
        ],
    );
    section("Dataset", dataset);

    let ard_rows: Vec<Vec<String>> = retweet_density_table(corpus)
        .into_iter()
        .map(|(c, counts, ard)| {
            vec![
                c.to_string(),
                counts.celebrities.to_string(),
                counts.authored.to_string(),
                counts.retweets.to_string(),
                format!("{ard:.4}"),
            ]
        })
        .collect();
    section(
        "Average retweet density by category",
        markdown_table(
            &["Category", "Celebrities", "Tweets", "Retweets", "ARD"],
            &ard_rows,
        ),
    );

    section(
        "Spearman correlation of network features with follower count",
        network_table(&corr.entries),
    );

    let mut liwc = corr.filtered(|f| f.starts_with(LIWC_PREFIX));
    liwc.sort_by(|a, b| {
        b.rho
            .total_cmp(&a.rho)
            .then_with(|| a.feature.cmp(&b.feature))
    });
    let top: Vec<CorrelationEntry> = liwc.iter().take(10).cloned().collect();
    let bottom: Vec<CorrelationEntry> = liwc.iter().rev().take(10).cloned().collect();
    section(
        "Top ten lexicon categories by correlation",
        correlation_markdown(&top),
    );
    section(
        "Bottom ten lexicon categories by correlation",
        correlation_markdown(&bottom),
    );

    let other = corr.filtered(|f| {
        !f.starts_with(LIWC_PREFIX) && !f.starts_with("rt_") && !f.starts_with("men_")
    });
    section(
        "Correlation of sentiment, style and readability features",
        correlation_markdown(&other),
    );

    let mut grid_md = accuracy_grid_markdown(grid);
    grid_md.push_str("\nFeature sets:\n\n");
    for s in feature_subsets() {
        let _ = writeln!(grid_md, "- `{}`: {}", s.name, s.description);
    }
    section(
        &format!(
            "Classification accuracy ({}-fold cross-validation)",
            analysis.config.k_folds
        ),
        grid_md,
    );

    let network_cols: Vec<String> = [Flavor::Retweet, Flavor::Mention]
        .iter()
        .flat_map(|f| {
            CentralityVector::MEASURES
                .iter()
                .map(move |m| format!("{}_{m}", f.prefix()))
        })
        .collect();
    let refs: Vec<&str> = network_cols.iter().map(String::as_str).collect();
    section(
        "Bucket-wise average network centrality",
        agg.markdown(&refs),
    );

    let ling = [
        "sent_pos",
        "sent_neg",
        "sent_neu",
        "sent_comp",
        "pos_entropy",
        "in_vocab",
        "ttr",
        "cpw",
        "wps",
        "p1",
        "p2",
        "p3",
        "it",
        "ari",
    ];
    section(
        "Bucket-wise average linguistic features",
        agg.markdown(&ling),
    );

    let liwc_cols: Vec<&str> = analysis
        .matrix
        .feature_names()
        .iter()
        .map(String::as_str)
        .filter(|f| f.starts_with(LIWC_PREFIX))
        .collect();
    section(
        "Bucket-wise average lexicon category density",
        agg.markdown(&liwc_cols),
    );

    if !corr.undefined.is_empty() || !analysis.skipped_profiles.is_empty() {
        let mut notes = String::new();
        if !corr.undefined.is_empty() {
            let _ = writeln!(
                notes,
                "- Constant features (no correlation): {}",
                corr.undefined.join(", ")
            );
        }
        if !analysis.skipped_profiles.is_empty() {
            let names: Vec<&str> = analysis
                .skipped_profiles
                .iter()
                .map(|(h, _)| h.as_str())
                .collect();
            let _ = writeln!(
                notes,
                "- Celebrities without usable text: {}",
                names.join(", ")
            );
        }
        section("Notes", notes);
    }

    Ok(format!("# Celebrity popularity analysis\n\n{out}"))
}
