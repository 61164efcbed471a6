//! Pipeline configuration: JSON file merged with command-line overrides.

use std::path::{Path, PathBuf};

use celebnet::linguistic::LinguisticOptions;
use celebnet::pipeline::AnalysisConfig;
use celebnet::resources::ResourcePaths;
use celebnet::{Error, Result};
use clap::Args;
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub tweets: Option<PathBuf>,
    pub roster: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub sentiment: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub threshold: u32,
    pub damping: f64,
    pub seed: u64,
    pub k_folds: usize,
    pub weighted: bool,
    pub distinct_tweets: bool,
    pub include_roster_engagers: bool,
    pub per_tweet_mean: bool,
    pub log_base: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let a = AnalysisConfig::default();
        Self {
            tweets: None,
            roster: None,
            lexicon: None,
            sentiment: None,
            dictionary: None,
            stopwords: None,
            out_dir: PathBuf::from("out"),
            threshold: a.threshold,
            damping: a.damping,
            seed: a.seed,
            k_folds: a.k_folds,
            weighted: a.weighted,
            distinct_tweets: a.distinct_tweets,
            include_roster_engagers: a.include_roster_engagers,
            per_tweet_mean: false,
            log_base: None,
        }
    }
}

/// Options shared by every subcommand; each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON configuration file
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Tweets file (JSON lines)
    #[arg(long, global = true, value_name = "FILE")]
    pub tweets: Option<PathBuf>,
    /// Roster CSV with header handle,category,followers_future
    #[arg(long, global = true, value_name = "FILE")]
    pub roster: Option<PathBuf>,
    /// Category lexicon JSON (bundled demo lexicon when omitted)
    #[arg(long, global = true, value_name = "FILE")]
    pub lexicon: Option<PathBuf>,
    /// Sentiment lexicon TSV (bundled demo list when omitted)
    #[arg(long, global = true, value_name = "FILE")]
    pub sentiment: Option<PathBuf>,
    /// Spelling dictionary, one word per line (bundled demo list when omitted)
    #[arg(long, global = true, value_name = "FILE")]
    pub dictionary: Option<PathBuf>,
    /// Stopword list, one word per line (bundled English list when omitted)
    #[arg(long, global = true, value_name = "FILE")]
    pub stopwords: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Minimum common engagers for an edge
    #[arg(long, global = true)]
    pub threshold: Option<u32>,
    /// PageRank damping factor
    #[arg(long, global = true)]
    pub damping: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of cross-validation folds
    #[arg(long, global = true)]
    pub k_folds: Option<usize>,
    /// Use edge weights in PageRank
    #[arg(long, global = true)]
    pub weighted: bool,
    /// Mention graph: count a pair only when mentioned in different tweets
    #[arg(long, global = true)]
    pub distinct_tweets: bool,
    /// Mention graph: let roster celebrities count as mentioners
    #[arg(long, global = true)]
    pub include_roster_engagers: bool,
    /// Average sentiment per tweet instead of pooling tokens
    #[arg(long, global = true)]
    pub per_tweet_mean: bool,
    /// Logarithm base for POS-tag entropy (natural log when omitted)
    #[arg(long, global = true)]
    pub log_base: Option<f64>,
}

impl PipelineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    /// Config file (if any) with command-line values applied on top.
    pub fn resolve(o: &Overrides) -> Result<Self> {
        let mut c = match &o.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        let set = |slot: &mut Option<PathBuf>, v: &Option<PathBuf>| {
            if v.is_some() {
                slot.clone_from(v);
            }
        };
        set(&mut c.tweets, &o.tweets);
        set(&mut c.roster, &o.roster);
        set(&mut c.lexicon, &o.lexicon);
        set(&mut c.sentiment, &o.sentiment);
        set(&mut c.dictionary, &o.dictionary);
        set(&mut c.stopwords, &o.stopwords);
        if let Some(d) = &o.out_dir {
            c.out_dir.clone_from(d);
        }
        c.threshold = o.threshold.unwrap_or(c.threshold);
        c.damping = o.damping.unwrap_or(c.damping);
        c.seed = o.seed.unwrap_or(c.seed);
        c.k_folds = o.k_folds.unwrap_or(c.k_folds);
        c.weighted |= o.weighted;
        c.distinct_tweets |= o.distinct_tweets;
        c.include_roster_engagers |= o.include_roster_engagers;
        c.per_tweet_mean |= o.per_tweet_mean;
        if o.log_base.is_some() {
            c.log_base = o.log_base;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.analysis().validate()?;
        if let Some(b) = self.log_base {
            if !(b > 0.0 && b != 1.0 && b.is_finite()) {
                return Err(Error::Validation(format!(
                    "log base must be positive and not 1, got {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn analysis(&self) -> AnalysisConfig {
        AnalysisConfig {
            threshold: self.threshold,
            damping: self.damping,
            seed: self.seed,
            k_folds: self.k_folds,
            weighted: self.weighted,
            distinct_tweets: self.distinct_tweets,
            include_roster_engagers: self.include_roster_engagers,
        }
    }

    pub fn linguistic(&self) -> LinguisticOptions {
        LinguisticOptions {
            per_tweet_mean: self.per_tweet_mean,
            log_base: self.log_base,
        }
    }

    pub fn resource_paths(&self) -> ResourcePaths<'_> {
        ResourcePaths {
            lexicon: self.lexicon.as_deref(),
            sentiment: self.sentiment.as_deref(),
            dictionary: self.dictionary.as_deref(),
            stopwords: self.stopwords.as_deref(),
        }
    }

    pub fn inputs(&self) -> Result<(&Path, &Path)> {
        let missing = |what: &str| {
            Error::Validation(format!(
                "no {what} file given (use --{what} or the config file)"
            ))
        };
        Ok((
            self.tweets.as_deref().ok_or_else(|| missing("tweets"))?,
            self.roster.as_deref().ok_or_else(|| missing("roster"))?,
        ))
    }
}
