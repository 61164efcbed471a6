use super::FeatureMatrix;
use crate::error::{Error, Result};
use crate::linguistic::LIWC_PREFIX;

/// Network column prefixes, one per graph flavour.
const NETWORK_PREFIXES: [&str; 2] = ["rt_", "men_"];
const FEW_NETWORK: [&str; 4] = ["c_bet", "c_deg", "c_pr", "clust_coff"];
const HANDPICKED: [&str; 5] = ["posemo", "affect", "funct", "cogmech", "social"];
const COMBINED_LIWC: [&str; 4] = ["affect", "funct", "cogmech", "social"];

fn is_network(name: &str) -> bool {
    NETWORK_PREFIXES.iter().any(|p| name.starts_with(p))
}

fn is_few_network(name: &str) -> bool {
    NETWORK_PREFIXES.iter().any(|p| {
        name.strip_prefix(p)
            .is_some_and(|m| FEW_NETWORK.contains(&m))
    })
}

fn is_liwc(name: &str) -> bool {
    name.starts_with(LIWC_PREFIX)
}

fn liwc_in(name: &str, cats: &[&str]) -> bool {
    name.strip_prefix(LIWC_PREFIX)
        .is_some_and(|c| cats.contains(&c))
}

/// A named column-selection predicate.
#[derive(Debug, Clone, Copy)]
pub struct FeatureSubset {
    pub name: &'static str,
    pub description: &'static str,
    predicate: fn(&str) -> bool,
    /// Columns that must be present for the subset to be meaningful.
    required: fn() -> Vec<String>,
}

impl FeatureSubset {
    pub fn contains(&self, feature: &str) -> bool {
        (self.predicate)(feature)
    }

    /// Matching columns of `m`, in matrix order. Fails if a required column
    /// is missing or nothing matches.
    pub fn select(&self, m: &FeatureMatrix) -> Result<FeatureMatrix> {
        let missing: Vec<String> = (self.required)()
            .into_iter()
            .filter(|c| m.column_index(c).is_none())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "feature set {} needs missing columns: {}",
                self.name,
                missing.join(", ")
            )));
        }
        let cols: Vec<usize> = m
            .feature_names()
            .iter()
            .enumerate()
            .filter(|(_, f)| self.contains(f))
            .map(|(j, _)| j)
            .collect();
        if cols.is_empty() {
            return Err(Error::Validation(format!(
                "feature set {} selects no columns",
                self.name
            )));
        }
        Ok(m.select_columns(&cols))
    }
}

fn none() -> Vec<String> {
    Vec::new()
}

fn few_network_cols() -> Vec<String> {
    NETWORK_PREFIXES
        .iter()
        .flat_map(|p| FEW_NETWORK.iter().map(move |m| format!("{p}{m}")))
        .collect()
}

fn liwc_cols(cats: &[&str]) -> Vec<String> {
    cats.iter().map(|c| format!("{LIWC_PREFIX}{c}")).collect()
}

/// The seven feature sets compared in the accuracy tables.
pub fn feature_subsets() -> [FeatureSubset; 7] {
    [
        FeatureSubset {
            name: "all-network",
            description: "All network features",
            predicate: is_network,
            required: none,
        },
        FeatureSubset {
            name: "few-network",
            description: "Betweenness, degree, PageRank and clustering of both networks",
            predicate: is_few_network,
            required: few_network_cols,
        },
        FeatureSubset {
            name: "all-linguistic",
            description: "All linguistic features",
            predicate: |f| !is_network(f),
            required: none,
        },
        FeatureSubset {
            name: "liwc",
            description: "Lexicon category densities only",
            predicate: is_liwc,
            required: none,
        },
        FeatureSubset {
            name: "non-liwc-linguistic",
            description: "Linguistic features excluding lexicon categories",
            predicate: |f| !is_network(f) && !is_liwc(f),
            required: none,
        },
        FeatureSubset {
            name: "handpicked-linguistic",
            description: "posemo, affect, funct, cogmech and social densities",
            predicate: |f| liwc_in(f, &HANDPICKED),
            required: || liwc_cols(&HANDPICKED),
        },
        FeatureSubset {
            name: "combined",
            description:
                "Few network features plus affect, funct, cogmech, social and compound sentiment",
            predicate: |f| is_few_network(f) || liwc_in(f, &COMBINED_LIWC) || f == "sent_comp",
            required: || {
                let mut c = few_network_cols();
                c.extend(liwc_cols(&COMBINED_LIWC));
                c.push("sent_comp".into());
                c
            },
        },
    ]
}

pub fn feature_subset(name: &str) -> Result<FeatureSubset> {
    feature_subsets()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| {
            let names: Vec<&str> = feature_subsets().iter().map(|s| s.name).collect();
            Error::Validation(format!(
                "unknown feature set {name:?}; expected one of {}",
                names.join(", ")
            ))
        })
}
