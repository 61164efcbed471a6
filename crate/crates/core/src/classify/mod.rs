//! Follower buckets, feature matrices, classifiers and cross-validation.

mod cv;
mod forest;
mod gnb;
mod sgd;
mod subsets;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::CelebrityProfile;
use crate::error::{Error, Result};
use crate::fmt::sig10;

pub use cv::{accuracy_grid_markdown, cross_validate, fold_assignment, CvReport};
pub use forest::{ForestModel, ForestParams};
pub use gnb::GnbModel;
pub use sgd::{SgdModel, SgdParams};
pub use subsets::{feature_subset, feature_subsets, FeatureSubset};

/// Default seed for every stochastic component.
pub const DEFAULT_SEED: u64 = 42;

/// Follower bucket. The derived order (HIGH < MID < LOW) is the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Bucket {
    High,
    Mid,
    Low,
}

impl Bucket {
    pub const ALL: [Bucket; 3] = [Bucket::High, Bucket::Mid, Bucket::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Bucket::High => "HIGH",
            Bucket::Mid => "MID",
            Bucket::Low => "LOW",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Bucket {
        Bucket::ALL[i]
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Bucket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Bucket::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::Validation(format!("unknown bucket {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketLabel {
    pub handle: String,
    pub bucket: Bucket,
}

/// Split eligible celebrities into terciles of `followers_future`: the first
/// ⌊n/3⌋ are HIGH, the next ⌊n/3⌋ MID, the rest LOW. Ties go to the smaller
/// handle first. Output is sorted by bucket, then rank.
pub fn assign_buckets(
    roster: &[CelebrityProfile],
    eligible: &HashSet<&str>,
) -> Result<Vec<BucketLabel>> {
    let mut chosen: Vec<&CelebrityProfile> = roster
        .iter()
        .filter(|p| eligible.contains(p.handle.as_str()))
        .collect();
    let distinct: BTreeSet<&str> = chosen.iter().map(|p| p.handle.as_str()).collect();
    if distinct.len() != chosen.len() {
        return Err(Error::Validation("duplicate handle in roster".into()));
    }
    if chosen.len() < 3 {
        return Err(Error::Validation(format!(
            "need at least 3 eligible celebrities for bucketing, got {}",
            chosen.len()
        )));
    }
    chosen.sort_by(|a, b| {
        b.followers_future
            .cmp(&a.followers_future)
            .then_with(|| a.handle.cmp(&b.handle))
    });
    let third = chosen.len() / 3;
    Ok(chosen
        .into_iter()
        .enumerate()
        .map(|(i, p)| BucketLabel {
            handle: p.handle.clone(),
            bucket: if i < third {
                Bucket::High
            } else if i < 2 * third {
                Bucket::Mid
            } else {
                Bucket::Low
            },
        })
        .collect())
}

pub fn write_labels_csv(w: impl Write, labels: &[BucketLabel]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["handle", "bucket"])?;
    for l in labels {
        wtr.write_record([l.handle.as_str(), l.bucket.as_str()])?;
    }
    wtr.flush()
}

/// Dense row-major feature table with named rows and columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMatrix {
    handles: Vec<String>,
    feature_names: Vec<String>,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(
        handles: Vec<String>,
        feature_names: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if rows.len() != handles.len() {
            return Err(Error::Validation(format!(
                "{} rows for {} handles",
                rows.len(),
                handles.len()
            )));
        }
        if handles.iter().collect::<HashSet<_>>().len() != handles.len() {
            return Err(Error::Validation("duplicate row handle".into()));
        }
        if feature_names.iter().collect::<HashSet<_>>().len() != feature_names.len() {
            return Err(Error::Validation("duplicate feature name".into()));
        }
        let d = feature_names.len();
        let mut values = Vec::with_capacity(rows.len() * d);
        for (h, row) in handles.iter().zip(rows) {
            if row.len() != d {
                return Err(Error::Validation(format!(
                    "row {h:?} has {} values, expected {d}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Validation(format!(
                    "row {h:?}: non-finite value in {:?}",
                    feature_names[j]
                )));
            }
            values.extend(row);
        }
        Ok(Self {
            handles,
            feature_names,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.handles.len()
    }

    pub fn d(&self) -> usize {
        self.feature_names.len()
    }

    pub fn handles(&self) -> &[String] {
        &self.handles
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.d();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n()).map(|i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|f| f == name)
    }

    /// Keep the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            handles: self.handles.clone(),
            feature_names: cols
                .iter()
                .map(|&j| self.feature_names[j].clone())
                .collect(),
            values: self
                .rows()
                .flat_map(|r| cols.iter().map(move |&j| r[j]))
                .collect(),
        }
    }

    /// Keep the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            handles: rows.iter().map(|&i| self.handles[i].clone()).collect(),
            feature_names: self.feature_names.clone(),
            values: rows
                .iter()
                .flat_map(|&i| self.row(i).iter().copied())
                .collect(),
        }
    }

    pub fn write_csv(&self, w: impl Write) -> std::io::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["handle".to_string()];
        header.extend(self.feature_names.iter().cloned());
        wtr.write_record(&header)?;
        for (h, r) in self.handles.iter().zip(self.rows()) {
            let mut row = vec![h.clone()];
            row.extend(r.iter().map(|&v| sig10(v)));
            wtr.write_record(&row)?;
        }
        wtr.flush()
    }
}

/// A fitted classifier.
pub trait Model: Send + Sync {
    fn predict(&self, x: &[f64]) -> Bucket;
}

/// Which classifier to fit, with its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassifierSpec {
    Gnb,
    Sgd(SgdParams),
    Forest(ForestParams),
}

impl ClassifierSpec {
    pub const NAMES: [&'static str; 3] = ["gnb", "sgd", "forest"];

    pub fn name(&self) -> &'static str {
        match self {
            ClassifierSpec::Gnb => "gnb",
            ClassifierSpec::Sgd(_) => "sgd",
            ClassifierSpec::Forest(_) => "forest",
        }
    }

    /// Human-readable row label for accuracy tables.
    pub fn label(&self) -> &'static str {
        match self {
            ClassifierSpec::Gnb => "Gaussian Naive Bayes",
            ClassifierSpec::Sgd(_) => "SGD classifier",
            ClassifierSpec::Forest(_) => "Random forest",
        }
    }

    pub fn all() -> [ClassifierSpec; 3] {
        [
            ClassifierSpec::Gnb,
            ClassifierSpec::Sgd(SgdParams::default()),
            ClassifierSpec::Forest(ForestParams::default()),
        ]
    }

    pub fn fit(&self, x: &FeatureMatrix, y: &[Bucket], seed: u64) -> Result<Box<dyn Model>> {
        Ok(match self {
            ClassifierSpec::Gnb => Box::new(GnbModel::fit(x, y)?),
            ClassifierSpec::Sgd(p) => Box::new(SgdModel::fit(x, y, *p, seed)?),
            ClassifierSpec::Forest(p) => Box::new(ForestModel::fit(x, y, *p, seed)?),
        })
    }
}

impl FromStr for ClassifierSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnb" => Ok(ClassifierSpec::Gnb),
            "sgd" => Ok(ClassifierSpec::Sgd(SgdParams::default())),
            "forest" => Ok(ClassifierSpec::Forest(ForestParams::default())),
            _ => Err(Error::Validation(format!(
                "unknown classifier {s:?}; expected one of gnb, sgd, forest"
            ))),
        }
    }
}

fn check_training(x: &FeatureMatrix, y: &[Bucket]) -> Result<()> {
    if x.n() != y.len() {
        return Err(Error::Fit(format!("{} rows but {} labels", x.n(), y.len())));
    }
    if x.n() == 0 {
        return Err(Error::Fit("empty training set".into()));
    }
    Ok(())
}

fn class_counts(y: &[Bucket]) -> [usize; 3] {
    let mut c = [0; 3];
    for b in y {
        c[b.index()] += 1;
    }
    c
}

/// Index of the maximum; the earliest index wins ties.
fn argmax(scores: impl IntoIterator<Item = (Bucket, f64)>) -> Bucket {
    let mut best: Option<(Bucket, f64)> = None;
    for (b, s) in scores {
        if best.is_none_or(|(_, bs)| s > bs) {
            best = Some((b, s));
        }
    }
    best.expect("at least one class").0
}
