//! Tweet corpus and celebrity roster ingestion.
//!
//! Tweets arrive as one JSON object per line; the roster is a CSV with header
//! `handle,category,followers_future`. Records that fail validation are
//! dropped and counted rather than aborting the load, while roster problems
//! are fatal.

mod porter;
pub mod text;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use porter::porter_stem;
pub use text::{preprocess_text, StopWords};

/// One ingested tweet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub author: String,
    pub text: String,
    pub timestamp: DateTime<Utc>,
    /// Handle of the original author when this tweet is a retweet.
    pub retweet_of: Option<String>,
    pub mentions: Vec<String>,
}

/// The five roster categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    Movies,
    Music,
    News,
    Tech,
    Sports,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Movies,
        Category::Music,
        Category::News,
        Category::Tech,
        Category::Sports,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Movies => "Movies",
            Category::Music => "Music",
            Category::News => "News",
            Category::Tech => "Tech",
            Category::Sports => "Sports",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::Validation(format!("unknown category {s:?}")))
    }
}

/// A roster entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CelebrityProfile {
    pub handle: String,
    pub category: Category,
    /// Follower count at the later observation point.
    pub followers_future: u64,
}

/// Deduplicated tweets together with the celebrity roster.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub tweets: Vec<TweetRecord>,
    pub roster: Vec<CelebrityProfile>,
}

/// Counts of records discarded while loading the tweets file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadStats {
    pub read: usize,
    pub invalid: usize,
    pub duplicates: usize,
}

impl LoadStats {
    pub fn dropped(&self) -> usize {
        self.invalid + self.duplicates
    }
}

/// Lenient mirror of a tweet line; every field optional so validation can
/// decide what to reject.
#[derive(Deserialize)]
struct RawTweet {
    id: Option<String>,
    author: Option<String>,
    text: Option<String>,
    timestamp: Option<String>,
    retweet_of: Option<String>,
    #[serde(default)]
    mentions: Option<Vec<String>>,
}

impl RawTweet {
    fn validate(self) -> Option<TweetRecord> {
        let id = self.id.filter(|s| !s.is_empty())?;
        let author = self.author.filter(|s| !s.is_empty())?;
        let text = self.text?;
        let timestamp = self.timestamp?.parse::<DateTime<Utc>>().ok()?;
        if let Some(orig) = &self.retweet_of {
            if orig.is_empty() || *orig == author {
                return None;
            }
        }
        Some(TweetRecord {
            id,
            author,
            text,
            timestamp,
            retweet_of: self.retweet_of,
            mentions: self.mentions.unwrap_or_default(),
        })
    }
}

/// Parse line-delimited tweets, dropping invalid lines and repeated ids
/// (first occurrence wins).
pub fn parse_tweets(reader: impl Read) -> Result<(Vec<TweetRecord>, LoadStats)> {
    let mut stats = LoadStats::default();
    let mut seen = HashSet::new();
    let mut tweets = Vec::new();
    for line in BufReader::new(reader).lines() {
        let line = line.map_err(|e| Error::format("tweets file", e))?;
        if line.trim().is_empty() {
            continue;
        }
        stats.read += 1;
        let Some(tweet) = serde_json::from_str::<RawTweet>(&line)
            .ok()
            .and_then(RawTweet::validate)
        else {
            stats.invalid += 1;
            continue;
        };
        if !seen.insert(tweet.id.clone()) {
            stats.duplicates += 1;
            continue;
        }
        tweets.push(tweet);
    }
    Ok((tweets, stats))
}

#[derive(Deserialize)]
struct RosterRow {
    handle: String,
    category: String,
    followers_future: u64,
}

/// Parse the roster CSV. Any malformed row or repeated handle is fatal.
pub fn parse_roster(reader: impl Read) -> Result<Vec<CelebrityProfile>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Validation(format!("roster header: {e}")))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["handle", "category", "followers_future"] {
        return Err(Error::Validation(format!(
            "roster header must be handle,category,followers_future (got {})",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut seen = HashSet::new();
    let mut roster = Vec::new();
    for (i, row) in rdr.deserialize::<RosterRow>().enumerate() {
        let row = row.map_err(|e| Error::Validation(format!("roster row {}: {e}", i + 2)))?;
        if row.handle.is_empty() {
            return Err(Error::Validation(format!(
                "roster row {}: empty handle",
                i + 2
            )));
        }
        let category = row.category.parse()?;
        if !seen.insert(row.handle.clone()) {
            return Err(Error::Validation(format!(
                "duplicate roster handle {:?}",
                row.handle
            )));
        }
        roster.push(CelebrityProfile {
            handle: row.handle,
            category,
            followers_future: row.followers_future,
        });
    }
    Ok(roster)
}

/// Load and validate a tweets file and a roster file.
pub fn load_corpus(
    tweets_path: impl AsRef<Path>,
    roster_path: impl AsRef<Path>,
) -> Result<(Corpus, LoadStats)> {
    let tweets_path = tweets_path.as_ref();
    let roster_path = roster_path.as_ref();
    let tf = std::fs::File::open(tweets_path).map_err(|e| Error::io(tweets_path, e))?;
    let (tweets, stats) = parse_tweets(tf)?;
    let rf = std::fs::File::open(roster_path).map_err(|e| Error::io(roster_path, e))?;
    let roster = parse_roster(rf)?;
    Ok((Corpus { tweets, roster }, stats))
}

/// Write tweets in the line-delimited input format.
pub fn write_tweets(mut w: impl Write, tweets: &[TweetRecord]) -> std::io::Result<()> {
    for t in tweets {
        serde_json::to_writer(&mut w, t)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Write the roster in the CSV input format.
pub fn write_roster(w: impl Write, roster: &[CelebrityProfile]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["handle", "category", "followers_future"])?;
    for c in roster {
        wtr.write_record([
            c.handle.as_str(),
            c.category.as_str(),
            &c.followers_future.to_string(),
        ])?;
    }
    wtr.flush()
}

impl Corpus {
    pub fn profile(&self, handle: &str) -> Option<&CelebrityProfile> {
        self.roster.iter().find(|c| c.handle == handle)
    }

    pub fn roster_handles(&self) -> HashSet<&str> {
        self.roster.iter().map(|c| c.handle.as_str()).collect()
    }

    /// Tweets authored by roster celebrities.
    pub fn celebrity_tweet_count(&self) -> usize {
        let roster = self.roster_handles();
        self.tweets
            .iter()
            .filter(|t| roster.contains(t.author.as_str()))
            .count()
    }

    /// Tweets authored by `handle`, in ascending timestamp order (file order on ties).
    pub fn celebrity_tweets(&self, handle: &str) -> Result<Vec<&TweetRecord>> {
        if self.profile(handle).is_none() {
            return Err(Error::NotFound(format!(
                "celebrity {handle:?} not in roster"
            )));
        }
        let mut out: Vec<_> = self.tweets.iter().filter(|t| t.author == handle).collect();
        out.sort_by_key(|t| t.timestamp);
        Ok(out)
    }

    /// Every celebrity's authored tweets in one pass, keyed by handle and
    /// ordered as in [`Corpus::celebrity_tweets`].
    pub fn tweets_by_celebrity(&self) -> BTreeMap<&str, Vec<&TweetRecord>> {
        let mut out: BTreeMap<&str, Vec<&TweetRecord>> = self
            .roster
            .iter()
            .map(|c| (c.handle.as_str(), Vec::new()))
            .collect();
        for t in &self.tweets {
            if let Some(v) = out.get_mut(t.author.as_str()) {
                v.push(t);
            }
        }
        for v in out.values_mut() {
            v.sort_by_key(|t| t.timestamp);
        }
        out
    }

    /// Retweets received per celebrity-authored tweet within `category`.
    pub fn average_retweet_density(&self, category: Category) -> Result<f64> {
        let counts = self.retweet_counts(category);
        if counts.authored == 0 {
            return Err(Error::UndefinedDensity(category.to_string()));
        }
        Ok(counts.retweets as f64 / counts.authored as f64)
    }

    /// Raw numerator and denominator behind [`Corpus::average_retweet_density`].
    pub fn retweet_counts(&self, category: Category) -> RetweetCounts {
        let members: HashSet<&str> = self
            .roster
            .iter()
            .filter(|c| c.category == category)
            .map(|c| c.handle.as_str())
            .collect();
        let mut counts = RetweetCounts {
            celebrities: members.len(),
            ..Default::default()
        };
        for t in &self.tweets {
            if members.contains(t.author.as_str()) {
                counts.authored += 1;
            }
            if t.retweet_of
                .as_deref()
                .is_some_and(|orig| members.contains(orig))
            {
                counts.retweets += 1;
            }
        }
        counts
    }

    /// Celebrity followers keyed by handle.
    pub fn followers(&self) -> HashMap<&str, u64> {
        self.roster
            .iter()
            .map(|c| (c.handle.as_str(), c.followers_future))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RetweetCounts {
    pub celebrities: usize,
    pub authored: usize,
    pub retweets: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: &str, author: &str, rt: Option<&str>) -> String {
        serde_json::json!({
            "id": id, "author": author, "text": "hello", "timestamp": "2017-06-01T00:00:00Z",
            "retweet_of": rt, "mentions": []
        })
        .to_string()
    }

    #[test]
    fn duplicates_keep_first() {
        let input = format!(
            "{}\n{}\n{}\n",
            line("1", "a", None),
            line("2", "b", None),
            line("1", "c", None)
        );
        let (tweets, stats) = parse_tweets(input.as_bytes()).unwrap();
        assert_eq!(tweets.len(), 2);
        assert_eq!(stats.dropped(), 1);
        assert_eq!(tweets[0].author, "a");
    }

    #[test]
    fn invalid_records_counted() {
        let input = [
            "not json".to_string(),
            r#"{"id":"1","text":"x","timestamp":"2017-06-01T00:00:00Z"}"#.to_string(),
            r#"{"id":"2","author":"a","text":"x","timestamp":"yesterday"}"#.to_string(),
            line("3", "a", Some("a")),
            r#"{"id":"4","author":"a","text":"x","timestamp":"2017-06-01T05:30:00+05:30","extra":1}"#
                .to_string(),
        ]
        .join("\n");
        let (tweets, stats) = parse_tweets(input.as_bytes()).unwrap();
        assert_eq!(stats.invalid, 4);
        assert_eq!(tweets.len(), 1);
        assert!(tweets[0].mentions.is_empty());
        assert_eq!(
            tweets[0].timestamp.to_rfc3339(),
            "2017-06-01T00:00:00+00:00"
        );
    }

    #[test]
    fn empty_tweets_file() {
        let (tweets, stats) = parse_tweets(&b""[..]).unwrap();
        assert!(tweets.is_empty());
        assert_eq!(stats, LoadStats::default());
    }

    #[test]
    fn roster_duplicate_is_fatal() {
        let csv = "handle,category,followers_future\na,Movies,10\na,Music,5\n";
        let err = parse_roster(csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("\"a\""), "{err}");
    }

    #[test]
    fn roster_bad_category() {
        let csv = "handle,category,followers_future\na,Film,10\n";
        assert!(matches!(
            parse_roster(csv.as_bytes()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn unreadable_file_is_io_error() {
        let err = load_corpus("/nonexistent/tweets.jsonl", "/nonexistent/roster.csv").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(!err.is_validation());
    }
}
