//! Co-engagement networks, linguistic features and follower-bucket
//! classification for celebrity tweet corpora.
//!
//! The crate is organised as a pipeline:
//!
//! - [`corpus`]: JSONL/CSV ingestion, text preprocessing and the Porter stemmer
//! - [`graph`]: retweet and mention co-engagement networks
//! - [`centrality`]: betweenness, closeness, degree, clustering and PageRank
//! - [`linguistic`]: lexicon densities, sentiment, POS entropy, style and ARI
//! - [`stats`]: ranking, Spearman correlation and bucket aggregates
//! - [`classify`]: bucket assignment, classifiers and stratified cross-validation
//! - [`synth`]: deterministic synthetic corpora with planted signal
//! - [`pipeline`] and [`report`]: end-to-end assembly and markdown output

pub mod centrality;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod fmt;
pub mod graph;
pub mod linguistic;
pub mod pipeline;
pub mod report;
pub mod resources;
pub mod stats;
pub mod synth;

pub use centrality::{centrality_report, CentralityVector};
pub use classify::{Bucket, BucketLabel, CvReport, FeatureMatrix};
pub use corpus::{Category, CelebrityProfile, Corpus, TweetRecord};
pub use error::{Error, Result};
pub use graph::{EngagementGraph, Flavor, GraphOptions};
pub use linguistic::{Lexicon, LinguisticProfile, SentimentLexicon};
