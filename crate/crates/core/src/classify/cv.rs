use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{class_counts, Bucket, ClassifierSpec, FeatureMatrix, Model};
use crate::error::{Error, Result};
use crate::fmt::markdown_table;

/// Cross-validation outcome. `confusion[t][p]` counts rows of true bucket `t`
/// predicted as `p`, in HIGH, MID, LOW order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub classifier: String,
    pub feature_set: String,
    pub seed: u64,
    pub fold_accuracies: Vec<f64>,
    /// Pooled accuracy over all held-out rows, `trace(confusion) / n`.
    pub mean_accuracy: f64,
    pub confusion: [[usize; 3]; 3],
}

impl CvReport {
    pub fn n(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Stratified fold index for every row. Each class is shuffled, the classes
/// are concatenated in bucket order and row `p` of the concatenation goes to
/// fold `p mod k`, so fold sizes differ by at most one and every class is
/// spread evenly.
pub fn fold_assignment(y: &[Bucket], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::Validation(format!("need at least 2 folds, got {k}")));
    }
    let counts = class_counts(y);
    for b in Bucket::ALL {
        let c = counts[b.index()];
        if c > 0 && c < k {
            return Err(Error::Validation(format!(
                "class {b} has {c} rows, fewer than {k} folds"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0; y.len()];
    let mut pos = 0usize;
    for b in Bucket::ALL {
        let mut members: Vec<usize> = (0..y.len()).filter(|&i| y[i] == b).collect();
        members.shuffle(&mut rng);
        for i in members {
            folds[i] = pos % k;
            pos += 1;
        }
    }
    Ok(folds)
}

fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Stratified k-fold cross-validation with an arbitrary fitting function.
/// Folds are fitted in parallel; fold `f` receives a seed derived from
/// `(seed, f)`.
pub fn cross_validate_with<F>(
    x: &FeatureMatrix,
    y: &[Bucket],
    k: usize,
    seed: u64,
    fit: F,
) -> Result<CvReport>
where
    F: Fn(&FeatureMatrix, &[Bucket], u64) -> Result<Box<dyn Model>> + Sync,
{
    if x.n() != y.len() {
        return Err(Error::Validation(format!(
            "{} rows but {} labels",
            x.n(),
            y.len()
        )));
    }
    let folds = fold_assignment(y, k, seed)?;
    let per_fold: Vec<[[usize; 3]; 3]> = (0..k)
        .into_par_iter()
        .map(|f| {
            let train: Vec<usize> = (0..y.len()).filter(|&i| folds[i] != f).collect();
            let test: Vec<usize> = (0..y.len()).filter(|&i| folds[i] == f).collect();
            let ty: Vec<Bucket> = train.iter().map(|&i| y[i]).collect();
            let model = fit(&x.select_rows(&train), &ty, fold_seed(seed, f))?;
            let mut conf = [[0usize; 3]; 3];
            for i in test {
                conf[y[i].index()][model.predict(x.row(i)).index()] += 1;
            }
            Ok(conf)
        })
        .collect::<Result<_>>()?;
    let mut confusion = [[0usize; 3]; 3];
    let mut fold_accuracies = Vec::with_capacity(k);
    for c in &per_fold {
        let total: usize = c.iter().flatten().sum();
        let correct: usize = (0..3).map(|i| c[i][i]).sum();
        fold_accuracies.push(if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        });
        for t in 0..3 {
            for p in 0..3 {
                confusion[t][p] += c[t][p];
            }
        }
    }
    let correct: usize = (0..3).map(|i| confusion[i][i]).sum();
    Ok(CvReport {
        classifier: String::new(),
        feature_set: String::new(),
        seed,
        fold_accuracies,
        mean_accuracy: correct as f64 / y.len() as f64,
        confusion,
    })
}

/// Stratified k-fold cross-validation of one of the built-in classifiers.
pub fn cross_validate(
    x: &FeatureMatrix,
    y: &[Bucket],
    spec: ClassifierSpec,
    k: usize,
    seed: u64,
) -> Result<CvReport> {
    let mut report = cross_validate_with(x, y, k, seed, |x, y, s| spec.fit(x, y, s))?;
    report.classifier = spec.name().to_string();
    Ok(report)
}

/// Classifiers as rows, feature sets as columns, mean accuracy in cells.
/// Feature sets appear in first-seen order.
pub fn accuracy_grid_markdown(reports: &[CvReport]) -> String {
    let mut sets: Vec<&str> = Vec::new();
    let mut classifiers: Vec<&str> = Vec::new();
    for r in reports {
        if !sets.contains(&r.feature_set.as_str()) {
            sets.push(&r.feature_set);
        }
        if !classifiers.contains(&r.classifier.as_str()) {
            classifiers.push(&r.classifier);
        }
    }
    let mut header = vec!["Classifier"];
    header.extend(&sets);
    let rows: Vec<Vec<String>> = classifiers
        .iter()
        .map(|c| {
            let mut row = vec![c.to_string()];
            row.extend(sets.iter().map(|s| {
                reports
                    .iter()
                    .find(|r| r.classifier == *c && r.feature_set == *s)
                    .map_or("-".to_string(), |r| format!("{:.4}", r.mean_accuracy))
            }));
            row
        })
        .collect();
    markdown_table(&header, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    struct Constant(Bucket);
    impl Model for Constant {
        fn predict(&self, _: &[f64]) -> Bucket {
            self.0
        }
    }

    /// Reads the label straight out of feature 0.
    struct Oracle;
    impl Model for Oracle {
        fn predict(&self, x: &[f64]) -> Bucket {
            Bucket::from_index(x[0] as usize)
        }
    }

    fn labelled(sizes: [usize; 3]) -> (FeatureMatrix, Vec<Bucket>) {
        let y: Vec<Bucket> = Bucket::ALL
            .iter()
            .flat_map(|&b| std::iter::repeat_n(b, sizes[b.index()]))
            .collect();
        let x = FeatureMatrix::new(
            (0..y.len()).map(|i| format!("r{i:04}")).collect(),
            vec!["label".into()],
            y.iter().map(|b| vec![b.index() as f64]).collect(),
        )
        .unwrap();
        (x, y)
    }

    #[test]
    fn stratified_arithmetic_324() {
        let (_, y) = labelled([108, 108, 108]);
        let folds = fold_assignment(&y, 10, 42).unwrap();
        for f in 0..10 {
            let members: Vec<usize> = (0..y.len()).filter(|&i| folds[i] == f).collect();
            assert!((32..=33).contains(&members.len()));
            let c = class_counts(&members.iter().map(|&i| y[i]).collect::<Vec<_>>());
            assert!(c.iter().all(|n| (10..=11).contains(n)), "{c:?}");
        }
    }

    #[test]
    fn oracle_and_constant() {
        let (x, y) = labelled([30, 30, 30]);
        let r = cross_validate_with(&x, &y, 10, 1, |_, _, _| Ok(Box::new(Oracle))).unwrap();
        assert_eq!(r.mean_accuracy, 1.0);
        let r = cross_validate_with(&x, &y, 10, 1, |_, _, _| Ok(Box::new(Constant(Bucket::Mid))))
            .unwrap();
        assert!((r.mean_accuracy - 1.0 / 3.0).abs() < 1e-12);
        assert!(r
            .fold_accuracies
            .iter()
            .all(|a| (*a - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn small_class_rejected() {
        let (x, y) = labelled([30, 9, 30]);
        let err = cross_validate(&x, &y, ClassifierSpec::Gnb, 10, 1).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn grid_layout() {
        let mk = |c: &str, f: &str, a: f64| CvReport {
            classifier: c.into(),
            feature_set: f.into(),
            seed: 0,
            fold_accuracies: vec![],
            mean_accuracy: a,
            confusion: [[0; 3]; 3],
        };
        let md = accuracy_grid_markdown(&[mk("gnb", "liwc", 0.5), mk("sgd", "combined", 0.25)]);
        assert!(md.starts_with("| Classifier | liwc | combined |"));
        assert!(md.contains("| gnb | 0.5000 | - |"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn folds_partition_rows(
            sizes in (6usize..25, 0usize..25, 6usize..25),
            k in 2usize..4,
            seed in any::<u64>(),
        ) {
            // every class keeps at least two training rows per fold
            let sizes = [sizes.0, if sizes.1 < 6 { 0 } else { sizes.1 }, sizes.2];
            let (x, y) = labelled(sizes);
            let folds = fold_assignment(&y, k, seed).unwrap();
            prop_assert!(folds.iter().all(|&f| f < k));
            let n = y.len();
            for f in 0..k {
                let size = folds.iter().filter(|&&g| g == f).count();
                prop_assert!(size == n / k || size == n / k + 1);
            }
            let r = cross_validate(&x, &y, ClassifierSpec::Gnb, k, seed).unwrap();
            prop_assert_eq!(r.n(), n);
            for b in Bucket::ALL {
                prop_assert_eq!(r.confusion[b.index()].iter().sum::<usize>(), sizes[b.index()]);
            }
            let trace: usize = (0..3).map(|i| r.confusion[i][i]).sum();
            prop_assert!((r.mean_accuracy - trace as f64 / n as f64).abs() <= 1e-12);
        }
    }
}
