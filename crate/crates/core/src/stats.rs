//! Ranking, Spearman correlation and bucket-wise aggregation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;

use serde::Serialize;

use crate::classify::{Bucket, BucketLabel, FeatureMatrix};
use crate::error::{Error, Result};
use crate::fmt::{markdown_table, sig10};

/// Values keyed by handle together with their descending ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankList {
    pub entries: Vec<(String, f64)>,
    pub ranks: Vec<f64>,
}

impl RankList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Descending ranks (largest value gets rank 1); tied values share the mean
/// of the ranks they span.
pub fn rank_values(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let avg = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = avg;
        }
        i = j;
    }
    ranks
}

pub fn rank<S: Into<String>>(values: impl IntoIterator<Item = (S, f64)>) -> RankList {
    let entries: Vec<(String, f64)> = values.into_iter().map(|(h, v)| (h.into(), v)).collect();
    let vals: Vec<f64> = entries.iter().map(|(_, v)| *v).collect();
    RankList {
        ranks: rank_values(&vals),
        entries,
    }
}

/// Pearson correlation; `None` when either input has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "pearson inputs differ in length");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman correlation of two value vectors in matching order.
pub fn spearman_values(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Validation(format!(
            "spearman inputs differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Validation(
            "spearman needs at least two values".into(),
        ));
    }
    pearson(&rank_values(x), &rank_values(y))
        .ok_or_else(|| Error::UndefinedCorrelation("constant rank list".into()))
}

/// Pearson correlation of the two rank vectors, paired by handle.
pub fn spearman(x: &RankList, y: &RankList) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Validation(format!(
            "rank lists differ in size ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Validation(
            "spearman needs at least two entries".into(),
        ));
    }
    let y_rank: HashMap<&str, f64> = y
        .entries
        .iter()
        .zip(&y.ranks)
        .map(|((h, _), r)| (h.as_str(), *r))
        .collect();
    if y_rank.len() != y.len() {
        return Err(Error::Validation("duplicate handle in rank list".into()));
    }
    let mut seen = HashSet::new();
    let mut paired = Vec::with_capacity(x.len());
    for (h, _) in &x.entries {
        if !seen.insert(h.as_str()) {
            return Err(Error::Validation(format!(
                "duplicate handle {h:?} in rank list"
            )));
        }
        let r = y_rank.get(h.as_str()).ok_or_else(|| {
            Error::Validation(format!("handle {h:?} missing from second rank list"))
        })?;
        paired.push(*r);
    }
    pearson(&x.ranks, &paired)
        .ok_or_else(|| Error::UndefinedCorrelation("constant rank list".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationEntry {
    pub feature: String,
    pub rho: f64,
}

/// Per-feature correlations; constant columns cannot be ranked against the
/// target and are listed separately.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CorrelationReport {
    pub entries: Vec<CorrelationEntry>,
    pub undefined: Vec<String>,
}

impl CorrelationReport {
    pub fn get(&self, feature: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.feature == feature)
            .map(|e| e.rho)
    }

    /// Entries whose feature name satisfies `keep`, in report order.
    pub fn filtered(&self, keep: impl Fn(&str) -> bool) -> Vec<CorrelationEntry> {
        self.entries
            .iter()
            .filter(|e| keep(&e.feature))
            .cloned()
            .collect()
    }
}

/// Spearman rho of every column against `target` (row-aligned), sorted by
/// |rho| descending, then by feature name.
pub fn correlation_report(features: &FeatureMatrix, target: &[f64]) -> Result<CorrelationReport> {
    if target.len() != features.n() {
        return Err(Error::Validation(format!(
            "target has {} values for {} rows",
            target.len(),
            features.n()
        )));
    }
    if target.len() < 2 {
        return Err(Error::Validation(
            "correlation needs at least two rows".into(),
        ));
    }
    let target_ranks = rank_values(target);
    if target_ranks.iter().all(|&r| r == target_ranks[0]) {
        return Err(Error::UndefinedCorrelation("constant target".into()));
    }
    let mut report = CorrelationReport::default();
    for (j, name) in features.feature_names().iter().enumerate() {
        match pearson(&rank_values(&features.column(j)), &target_ranks) {
            Some(rho) => report.entries.push(CorrelationEntry {
                feature: name.clone(),
                rho,
            }),
            None => report.undefined.push(name.clone()),
        }
    }
    report.entries.sort_by(|a, b| {
        b.rho
            .abs()
            .total_cmp(&a.rho.abs())
            .then_with(|| a.feature.cmp(&b.feature))
    });
    Ok(report)
}

pub fn write_correlations_csv(w: impl Write, entries: &[CorrelationEntry]) -> std::io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["feature", "rho"])?;
    for e in entries {
        wtr.write_record([e.feature.as_str(), &sig10(e.rho)])?;
    }
    wtr.flush()
}

/// `| Feature | rho |` markdown table, four decimals.
pub fn correlation_markdown(entries: &[CorrelationEntry]) -> String {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| vec![e.feature.clone(), format!("{:.4}", e.rho)])
        .collect();
    markdown_table(&["Feature", "Spearman rho"], &rows)
}

/// Mean of each feature per bucket. Buckets without rows are absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketAggregates {
    pub features: Vec<String>,
    pub means: BTreeMap<Bucket, Vec<f64>>,
}

impl BucketAggregates {
    pub fn mean(&self, bucket: Bucket, feature: &str) -> Option<f64> {
        let j = self.features.iter().position(|f| f == feature)?;
        self.means.get(&bucket).map(|m| m[j])
    }

    pub fn write_csv(&self, w: impl Write) -> std::io::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["bucket".to_string()];
        header.extend(self.features.iter().cloned());
        wtr.write_record(&header)?;
        for (b, means) in &self.means {
            let mut row = vec![b.to_string()];
            row.extend(means.iter().map(|&m| sig10(m)));
            wtr.write_record(&row)?;
        }
        wtr.flush()
    }

    /// Buckets as columns, features as rows; absent buckets show `-`.
    pub fn markdown(&self, features: &[&str]) -> String {
        let mut header = vec!["Feature"];
        header.extend(Bucket::ALL.iter().map(|b| b.as_str()));
        let rows: Vec<Vec<String>> = features
            .iter()
            .filter(|f| self.features.iter().any(|g| g == *f))
            .map(|f| {
                let mut row = vec![f.to_string()];
                row.extend(Bucket::ALL.iter().map(|&b| match self.mean(b, f) {
                    Some(m) => sig10(m),
                    None => "-".into(),
                }));
                row
            })
            .collect();
        markdown_table(&header, &rows)
    }
}

/// Arithmetic mean of every feature per bucket. Rows are summed in handle
/// order, so the result does not depend on row order.
pub fn aggregate_by_bucket(
    features: &FeatureMatrix,
    labels: &[BucketLabel],
) -> Result<BucketAggregates> {
    let label_of: HashMap<&str, Bucket> = labels
        .iter()
        .map(|l| (l.handle.as_str(), l.bucket))
        .collect();
    let mut rows: BTreeMap<Bucket, Vec<(&str, usize)>> = BTreeMap::new();
    for (i, h) in features.handles().iter().enumerate() {
        let b = label_of
            .get(h.as_str())
            .ok_or_else(|| Error::Validation(format!("no bucket label for {h:?}")))?;
        rows.entry(*b).or_default().push((h.as_str(), i));
    }
    let means = rows
        .into_iter()
        .map(|(b, mut members)| {
            members.sort_unstable();
            let mut sums = vec![0.0; features.d()];
            for &(_, i) in &members {
                for (s, v) in sums.iter_mut().zip(features.row(i)) {
                    *s += v;
                }
            }
            let m = members.len() as f64;
            (b, sums.into_iter().map(|s| s / m).collect())
        })
        .collect();
    Ok(BucketAggregates {
        features: features.feature_names().to_vec(),
        means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank_values(&[10.0, 8.0, 8.0, 1.0]), [1.0, 2.5, 2.5, 4.0]);
        assert_eq!(rank_values(&[5.0, 5.0, 5.0]), [2.0, 2.0, 2.0]);
        assert_eq!(rank_values(&[4.0, 3.0, 2.0, 1.0]), [1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn spearman_examples() {
        let x = rank([("a", 1.0), ("b", 2.0), ("c", 3.0), ("d", 4.0)]);
        let y = rank([("a", 2.0), ("b", 1.0), ("c", 4.0), ("d", 3.0)]);
        assert!((spearman(&x, &y).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(spearman(&x, &x).unwrap(), 1.0);
        let rev = rank([("a", 4.0), ("b", 3.0), ("c", 2.0), ("d", 1.0)]);
        assert_eq!(spearman(&x, &rev).unwrap(), -1.0);
    }

    #[test]
    fn spearman_pairs_by_handle() {
        let x = rank([("a", 1.0), ("b", 2.0), ("c", 3.0)]);
        let y = rank([("c", 30.0), ("a", 10.0), ("b", 20.0)]);
        assert_eq!(spearman(&x, &y).unwrap(), 1.0);
    }

    #[test]
    fn spearman_errors() {
        let x = rank([("a", 1.0), ("b", 2.0)]);
        let flat = rank([("a", 1.0), ("b", 1.0)]);
        assert!(matches!(
            spearman(&x, &flat),
            Err(Error::UndefinedCorrelation(_))
        ));
        let other = rank([("a", 1.0), ("z", 2.0)]);
        assert!(matches!(spearman(&x, &other), Err(Error::Validation(_))));
        let one = rank([("a", 1.0)]);
        assert!(spearman(&one, &one).is_err());
    }

    fn matrix(cols: &[(&str, Vec<f64>)]) -> FeatureMatrix {
        let n = cols[0].1.len();
        let handles = (0..n).map(|i| format!("h{i:03}")).collect();
        let names = cols.iter().map(|(c, _)| c.to_string()).collect();
        let rows = (0..n)
            .map(|i| cols.iter().map(|(_, v)| v[i]).collect())
            .collect();
        FeatureMatrix::new(handles, names, rows).unwrap()
    }

    #[test]
    fn correlation_report_sorted() {
        let t = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let m = matrix(&[
            ("same", t.clone()),
            ("neg", t.iter().map(|v| -v).collect()),
            ("flat", vec![1.0; 5]),
            ("weak", vec![2.0, 1.0, 3.0, 5.0, 4.0]),
        ]);
        let r = correlation_report(&m, &t).unwrap();
        assert_eq!(r.entries[0].feature, "neg");
        assert_eq!(r.entries[0].rho, -1.0);
        assert_eq!(r.get("same"), Some(1.0));
        assert_eq!(r.entries[2].feature, "weak");
        assert_eq!(r.undefined, ["flat"]);
        let md = correlation_markdown(&r.entries);
        assert!(md.contains("| neg | -1.0000 |"));
    }

    fn labels(buckets: &[Bucket]) -> Vec<BucketLabel> {
        buckets
            .iter()
            .enumerate()
            .map(|(i, &bucket)| BucketLabel {
                handle: format!("h{i:03}"),
                bucket,
            })
            .collect()
    }

    #[test]
    fn bucket_means_and_absence() {
        let m = matrix(&[("f", vec![1.0, 2.0, 3.0])]);
        let agg = aggregate_by_bucket(&m, &labels(&[Bucket::High; 3])).unwrap();
        assert_eq!(agg.mean(Bucket::High, "f"), Some(2.0));
        assert_eq!(agg.mean(Bucket::Low, "f"), None);
        assert!(agg.markdown(&["f"]).contains("| f | 2 | - | - |"));
    }

    #[test]
    fn planted_offsets_order_buckets() {
        let b = [Bucket::High, Bucket::Mid, Bucket::Low];
        let bs: Vec<Bucket> = (0..30).map(|i| b[i % 3]).collect();
        let vals = (0..30)
            .map(|i| (i % 7) as f64 * 0.1 + [1.0, 0.0, -1.0][i % 3])
            .collect();
        let agg = aggregate_by_bucket(&matrix(&[("f", vals)]), &labels(&bs)).unwrap();
        let m = |b| agg.mean(b, "f").unwrap();
        assert!(m(Bucket::High) > m(Bucket::Mid) && m(Bucket::Mid) > m(Bucket::Low));
    }

    proptest! {
        #[test]
        fn rank_sum_is_triangular(v in prop::collection::vec(0u8..6, 1..60)) {
            let vals: Vec<f64> = v.iter().map(|&x| x as f64).collect();
            let n = vals.len() as f64;
            prop_assert_eq!(rank_values(&vals).iter().sum::<f64>(), n * (n + 1.0) / 2.0);
        }

        #[test]
        fn spearman_bounds_symmetry_monotone(
            pairs in prop::collection::vec((0u8..8, -50i32..50), 2..40)
        ) {
            let x: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let y: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
            if let Ok(r) = spearman_values(&x, &y) {
                prop_assert!((-1.0..=1.0).contains(&r));
                prop_assert_eq!(r, spearman_values(&y, &x).unwrap());
                let tx: Vec<f64> = x.iter().map(|v| v.exp() * 3.0 - 7.0).collect();
                prop_assert_eq!(r, spearman_values(&tx, &y).unwrap());
            }
            if spearman_values(&x, &x).is_ok() {
                prop_assert_eq!(spearman_values(&x, &x).unwrap(), 1.0);
            }
        }

        #[test]
        fn aggregation_ignores_row_order(
            vals in prop::collection::vec((-1e3f64..1e3, 0usize..3), 3..40),
            seed in any::<u64>(),
        ) {
            let b = [Bucket::High, Bucket::Mid, Bucket::Low];
            let m = matrix(&[("f", vals.iter().map(|v| v.0).collect())]);
            let l = labels(&vals.iter().map(|v| b[v.1]).collect::<Vec<_>>());
            let agg = aggregate_by_bucket(&m, &l).unwrap();
            let mut order: Vec<usize> = (0..vals.len()).collect();
            let mut s = seed;
            for i in (1..order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let shuffled = m.select_rows(&order);
            prop_assert_eq!(agg, aggregate_by_bucket(&shuffled, &l).unwrap());
        }
    }
}
