//! End-to-end assembly: graphs, centralities, linguistic profiles, the
//! feature matrix and bucket labels.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{centrality_report_with, CentralityVector, PageRankParams};
use crate::classify::{
    assign_buckets, cross_validate, feature_subset, Bucket, BucketLabel, ClassifierSpec, CvReport,
    FeatureMatrix, DEFAULT_SEED,
};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{build_graph, common_nodes, EngagementGraph, Flavor, GraphOptions};
use crate::linguistic::{profile_from_tweets, LinguisticProfile, LinguisticResources};
use crate::stats::{aggregate_by_bucket, correlation_report, BucketAggregates, CorrelationReport};

/// Algorithm settings shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub threshold: u32,
    pub damping: f64,
    pub seed: u64,
    pub k_folds: usize,
    /// Weighted PageRank.
    pub weighted: bool,
    pub distinct_tweets: bool,
    pub include_roster_engagers: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            threshold: 5,
            damping: 0.85,
            seed: DEFAULT_SEED,
            k_folds: 10,
            weighted: false,
            distinct_tweets: false,
            include_roster_engagers: false,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.threshold < 1 {
            return Err(Error::Validation("threshold must be at least 1".into()));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::Validation(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        if self.k_folds < 2 {
            return Err(Error::Validation(format!(
                "k_folds must be at least 2, got {}",
                self.k_folds
            )));
        }
        Ok(())
    }

    pub fn graph_options(&self) -> GraphOptions {
        GraphOptions {
            threshold: self.threshold,
            distinct_tweets: self.distinct_tweets,
            include_roster_engagers: self.include_roster_engagers,
        }
    }

    pub fn pagerank_params(&self) -> PageRankParams {
        PageRankParams {
            damping: self.damping,
            weighted: self.weighted,
            ..PageRankParams::default()
        }
    }
}

/// Both co-engagement graphs.
#[derive(Debug, Clone)]
pub struct Networks {
    pub retweet: EngagementGraph,
    pub mention: EngagementGraph,
}

impl Networks {
    pub fn build(corpus: &Corpus, config: &AnalysisConfig) -> Self {
        let opts = config.graph_options();
        let (retweet, mention) = rayon::join(
            || build_graph(corpus, Flavor::Retweet, opts),
            || build_graph(corpus, Flavor::Mention, opts),
        );
        Self { retweet, mention }
    }

    pub fn get(&self, flavor: Flavor) -> &EngagementGraph {
        match flavor {
            Flavor::Retweet => &self.retweet,
            Flavor::Mention => &self.mention,
        }
    }
}

/// A celebrity left out of the feature matrix, with the reason.
pub type Skipped = (String, String);

/// Profiles for every roster celebrity, in handle order. Celebrities whose
/// profile is undefined (no usable tokens) are returned separately.
pub fn linguistic_profiles(
    corpus: &Corpus,
    res: &LinguisticResources,
) -> Result<(Vec<LinguisticProfile>, Vec<Skipped>)> {
    let by_celeb = corpus.tweets_by_celebrity();
    let results: Vec<(&str, Result<LinguisticProfile>)> = by_celeb
        .par_iter()
        .map(|(h, tweets)| (*h, profile_from_tweets(h, tweets, res)))
        .collect();
    let mut profiles = Vec::new();
    let mut skipped = Vec::new();
    for (h, r) in results {
        match r {
            Ok(p) => profiles.push(p),
            Err(Error::UndefinedProfile(msg)) => skipped.push((h.to_string(), msg)),
            Err(e) => return Err(e),
        }
    }
    Ok((profiles, skipped))
}

/// Everything downstream stages need.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub config: AnalysisConfig,
    pub networks: Networks,
    pub retweet_centrality: Vec<CentralityVector>,
    pub mention_centrality: Vec<CentralityVector>,
    pub profiles: Vec<LinguisticProfile>,
    /// Roster celebrities without a defined linguistic profile, with the reason.
    pub skipped_profiles: Vec<Skipped>,
    /// Rows: celebrities present in both graphs with a defined profile.
    pub matrix: FeatureMatrix,
    /// `followers_future` per matrix row.
    pub followers: Vec<f64>,
    /// Buckets over the matrix rows, in matrix row order.
    pub labels: Vec<BucketLabel>,
}

impl Analysis {
    pub fn run(corpus: &Corpus, res: &LinguisticResources, config: AnalysisConfig) -> Result<Self> {
        config.validate()?;
        let networks = Networks::build(corpus, &config);
        let params = config.pagerank_params();
        let (retweet_centrality, mention_centrality) = rayon::join(
            || centrality_report_with(&networks.retweet, params),
            || centrality_report_with(&networks.mention, params),
        );
        let (profiles, skipped_profiles) = linguistic_profiles(corpus, res)?;

        let common = common_nodes(&networks.retweet, &networks.mention);
        let by_handle = |v: &[CentralityVector]| -> HashMap<String, [f64; 5]> {
            v.iter().map(|c| (c.handle.clone(), c.values())).collect()
        };
        let (rt, men) = (
            by_handle(&retweet_centrality),
            by_handle(&mention_centrality),
        );
        let eligible: BTreeSet<&str> = profiles
            .iter()
            .map(|p| p.handle.as_str())
            .filter(|h| common.contains(*h))
            .collect();
        let profile_of: HashMap<&str, &LinguisticProfile> =
            profiles.iter().map(|p| (p.handle.as_str(), p)).collect();

        let mut names: Vec<String> = Vec::new();
        for flavor in [Flavor::Retweet, Flavor::Mention] {
            names.extend(
                CentralityVector::MEASURES
                    .iter()
                    .map(|m| format!("{}_{m}", flavor.prefix())),
            );
        }
        if let Some(first) = profiles.first() {
            names.extend(first.features().into_iter().map(|(k, _)| k));
        }
        let handles: Vec<String> = eligible.iter().map(|h| h.to_string()).collect();
        let rows: Vec<Vec<f64>> = eligible
            .iter()
            .map(|h| {
                let mut row: Vec<f64> = rt[*h].iter().chain(&men[*h]).copied().collect();
                row.extend(profile_of[h].features().into_iter().map(|(_, v)| v));
                row
            })
            .collect();
        let matrix = FeatureMatrix::new(handles, names, rows)?;

        let followers_of = corpus.followers();
        let followers: Vec<f64> = matrix
            .handles()
            .iter()
            .map(|h| followers_of[h.as_str()] as f64)
            .collect();
        let eligible_set: HashSet<&str> = eligible.iter().copied().collect();
        let bucket_of: HashMap<String, Bucket> = assign_buckets(&corpus.roster, &eligible_set)?
            .into_iter()
            .map(|l| (l.handle, l.bucket))
            .collect();
        let labels = matrix
            .handles()
            .iter()
            .map(|h| BucketLabel {
                handle: h.clone(),
                bucket: bucket_of[h],
            })
            .collect();

        Ok(Self {
            config,
            networks,
            retweet_centrality,
            mention_centrality,
            profiles,
            skipped_profiles,
            matrix,
            followers,
            labels,
        })
    }

    pub fn buckets(&self) -> Vec<Bucket> {
        self.labels.iter().map(|l| l.bucket).collect()
    }

    pub fn correlations(&self) -> Result<CorrelationReport> {
        correlation_report(&self.matrix, &self.followers)
    }

    pub fn bucket_aggregates(&self) -> Result<BucketAggregates> {
        aggregate_by_bucket(&self.matrix, &self.labels)
    }

    /// Cross-validate one classifier on one named feature set.
    pub fn classify(&self, feature_set: &str, classifier: ClassifierSpec) -> Result<CvReport> {
        let x = feature_subset(feature_set)?.select(&self.matrix)?;
        let mut report = cross_validate(
            &x,
            &self.buckets(),
            classifier,
            self.config.k_folds,
            self.config.seed,
        )?;
        report.feature_set = feature_set.to_string();
        Ok(report)
    }
}
