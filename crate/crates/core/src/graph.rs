//! Retweet and mention co-engagement networks.
//!
//! Two celebrities are linked when at least `threshold` distinct users have
//! engaged with both of them. The edge weight is the pair's common-engager
//! count divided by the total over all retained edges, so weights of a
//! non-empty graph sum to one.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Retweet,
    Mention,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Retweet => "retweet",
            Flavor::Mention => "mention",
        }
    }

    /// Short column prefix used in feature names.
    pub fn prefix(self) -> &'static str {
        match self {
            Flavor::Retweet => "rt",
            Flavor::Mention => "men",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "retweet" => Ok(Flavor::Retweet),
            "mention" => Ok(Flavor::Mention),
            other => Err(Error::Validation(format!(
                "unknown graph flavor {other:?} (expected retweet or mention)"
            ))),
        }
    }
}

/// Construction switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphOptions {
    /// Minimum number of common engagers for an edge.
    pub threshold: u32,
    /// Mention graph: require the two celebrities to be mentioned in different tweets.
    pub distinct_tweets: bool,
    /// Mention graph: let roster celebrities count as mentioners.
    pub include_roster_engagers: bool,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self {
            threshold: 5,
            distinct_tweets: false,
            include_roster_engagers: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub raw_count: u32,
    pub weight: f64,
}

/// Weighted undirected celebrity graph.
///
/// Nodes are sorted; each edge has `source < target` and edges are sorted by
/// `(source, target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EngagementGraph {
    pub flavor: Flavor,
    pub threshold: u32,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

/// Metadata written next to the edge CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphHeader {
    pub flavor: Flavor,
    pub threshold: u32,
    pub node_count: usize,
    pub edge_count: usize,
}

impl EngagementGraph {
    /// Build a graph from already thresholded pair counts, normalising weights.
    fn from_counts(
        flavor: Flavor,
        threshold: u32,
        counts: BTreeMap<(String, String), u32>,
    ) -> Self {
        let total: u64 = counts.values().map(|&c| c as u64).sum();
        let mut nodes = BTreeSet::new();
        let edges = counts
            .into_iter()
            .map(|((source, target), raw_count)| {
                nodes.insert(source.clone());
                nodes.insert(target.clone());
                Edge {
                    source,
                    target,
                    raw_count,
                    weight: raw_count as f64 / total as f64,
                }
            })
            .collect();
        Self {
            flavor,
            threshold,
            nodes: nodes.into_iter().collect(),
            edges,
        }
    }

    /// A graph with explicit nodes and unit-count edges, mainly for analysing
    /// arbitrary topologies. Isolated nodes are kept.
    pub fn from_topology<S: AsRef<str>>(nodes: &[S], edges: &[(S, S)]) -> Result<Self> {
        let node_set: BTreeSet<String> = nodes.iter().map(|n| n.as_ref().to_string()).collect();
        let mut counts = BTreeMap::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::Validation(format!("self-loop on {a:?}")));
            }
            for n in [a, b] {
                if !node_set.contains(n) {
                    return Err(Error::Validation(format!("edge endpoint {n:?} not a node")));
                }
            }
            counts.insert(ordered(a, b), 1);
        }
        let mut g = Self::from_counts(Flavor::Retweet, 1, counts);
        g.nodes = node_set.into_iter().collect();
        Ok(g)
    }

    pub fn header(&self) -> GraphHeader {
        GraphHeader {
            flavor: self.flavor,
            threshold: self.threshold,
            node_count: self.nodes.len(),
            edge_count: self.edges.len(),
        }
    }

    /// Edge list as CSV `source,target,raw_count,weight`.
    pub fn write_csv(&self, w: impl Write) -> std::io::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["source", "target", "raw_count", "weight"])?;
        for e in &self.edges {
            wtr.write_record([
                e.source.as_str(),
                e.target.as_str(),
                &e.raw_count.to_string(),
                &e.weight.to_string(),
            ])?;
        }
        wtr.flush()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Keep pairs with at least `threshold` common engagers.
fn threshold_pairs(
    pair_counts: HashMap<(String, String), u32>,
    threshold: u32,
) -> BTreeMap<(String, String), u32> {
    pair_counts
        .into_iter()
        .filter(|&(_, c)| c >= threshold)
        .collect()
}

/// For every engager, count each unordered pair of the celebrities they engaged with.
fn count_pairs<'a>(
    engaged: impl Iterator<Item = &'a BTreeSet<&'a str>>,
) -> HashMap<(String, String), u32> {
    let mut counts: HashMap<(String, String), u32> = HashMap::new();
    for celebs in engaged {
        let v: Vec<&str> = celebs.iter().copied().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                *counts
                    .entry((v[i].to_string(), v[j].to_string()))
                    .or_default() += 1;
            }
        }
    }
    counts
}

/// Co-retweet network: users who retweeted at least one tweet of each celebrity.
pub fn build_retweet_graph(corpus: &Corpus, opts: GraphOptions) -> EngagementGraph {
    let roster = corpus.roster_handles();
    let mut by_user: HashMap<&str, BTreeSet<&str>> = HashMap::new();
    for t in &corpus.tweets {
        let Some(orig) = t.retweet_of.as_deref() else {
            continue;
        };
        if orig != t.author && roster.contains(orig) {
            by_user.entry(t.author.as_str()).or_default().insert(orig);
        }
    }
    let counts = count_pairs(by_user.values());
    EngagementGraph::from_counts(
        Flavor::Retweet,
        opts.threshold,
        threshold_pairs(counts, opts.threshold),
    )
}

/// Co-mention network: users who mentioned each celebrity in at least one of their tweets.
pub fn build_mention_graph(corpus: &Corpus, opts: GraphOptions) -> EngagementGraph {
    let roster = corpus.roster_handles();
    // user -> celebrity -> ids of the tweets mentioning it
    let mut by_user: HashMap<&str, BTreeMap<&str, BTreeSet<&str>>> = HashMap::new();
    for t in &corpus.tweets {
        if !opts.include_roster_engagers && roster.contains(t.author.as_str()) {
            continue;
        }
        for m in &t.mentions {
            let m = m.as_str();
            if m != t.author && roster.contains(m) {
                by_user
                    .entry(t.author.as_str())
                    .or_default()
                    .entry(m)
                    .or_default()
                    .insert(t.id.as_str());
            }
        }
    }

    let counts = if opts.distinct_tweets {
        let mut counts: HashMap<(String, String), u32> = HashMap::new();
        for celebs in by_user.values() {
            let v: Vec<(&str, &BTreeSet<&str>)> = celebs.iter().map(|(c, t)| (*c, t)).collect();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    let (ta, tb) = (v[i].1, v[j].1);
                    // fails only when both were mentioned solely in the same single tweet
                    let same_single = ta.len() == 1 && tb.len() == 1 && ta == tb;
                    if !same_single {
                        *counts
                            .entry((v[i].0.to_string(), v[j].0.to_string()))
                            .or_default() += 1;
                    }
                }
            }
        }
        counts
    } else {
        let sets: Vec<BTreeSet<&str>> = by_user
            .values()
            .map(|m| m.keys().copied().collect())
            .collect();
        count_pairs(sets.iter())
    };
    EngagementGraph::from_counts(
        Flavor::Mention,
        opts.threshold,
        threshold_pairs(counts, opts.threshold),
    )
}

pub fn build_graph(corpus: &Corpus, flavor: Flavor, opts: GraphOptions) -> EngagementGraph {
    match flavor {
        Flavor::Retweet => build_retweet_graph(corpus, opts),
        Flavor::Mention => build_mention_graph(corpus, opts),
    }
}

/// Celebrities present in both graphs.
pub fn common_nodes(g1: &EngagementGraph, g2: &EngagementGraph) -> BTreeSet<String> {
    let other: HashSet<&String> = g2.nodes.iter().collect();
    g1.nodes
        .iter()
        .filter(|n| other.contains(n))
        .cloned()
        .collect()
}
