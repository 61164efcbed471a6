use std::f64::consts::PI;

use super::{argmax, check_training, class_counts, Bucket, FeatureMatrix, Model};
use crate::error::{Error, Result};

/// Relative variance floor, scaled by the largest feature variance.
pub const VAR_SMOOTHING: f64 = 1e-9;

#[derive(Debug, Clone)]
struct ClassStats {
    bucket: Bucket,
    log_prior: f64,
    mean: Vec<f64>,
    var: Vec<f64>,
}

/// Gaussian naive Bayes with per-class, per-feature means and variances.
#[derive(Debug, Clone)]
pub struct GnbModel {
    classes: Vec<ClassStats>,
    epsilon: f64,
}

fn mean_var(rows: &[&[f64]], d: usize) -> (Vec<f64>, Vec<f64>) {
    let mut mean = vec![0.0; d];
    let mut n = 0usize;
    for &r in rows {
        n += 1;
        for (m, v) in mean.iter_mut().zip(r) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut var = vec![0.0; d];
    for &r in rows {
        for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    var.iter_mut().for_each(|s| *s /= n as f64);
    (mean, var)
}

impl GnbModel {
    /// Every class present in `y` needs at least two rows.
    pub fn fit(x: &FeatureMatrix, y: &[Bucket]) -> Result<Self> {
        check_training(x, y)?;
        let d = x.d();
        let (_, overall) = mean_var(&x.rows().collect::<Vec<_>>(), d);
        let max_var = overall.iter().copied().fold(0.0, f64::max);
        // all-constant data would otherwise give a zero floor
        let epsilon = if max_var > 0.0 {
            VAR_SMOOTHING * max_var
        } else {
            VAR_SMOOTHING
        };
        let counts = class_counts(y);
        let n = y.len() as f64;
        let mut classes = Vec::new();
        for b in Bucket::ALL {
            let c = counts[b.index()];
            if c == 0 {
                continue;
            }
            if c < 2 {
                return Err(Error::Fit(format!("class {b} has a single training row")));
            }
            let rows: Vec<&[f64]> = x
                .rows()
                .zip(y)
                .filter(|(_, &l)| l == b)
                .map(|(r, _)| r)
                .collect();
            let (mean, var) = mean_var(&rows, d);
            classes.push(ClassStats {
                bucket: b,
                log_prior: (c as f64 / n).ln(),
                mean,
                var: var.into_iter().map(|v| v + epsilon).collect(),
            });
        }
        Ok(Self { classes, epsilon })
    }

    /// Joint log-likelihood `ln prior + Σ ln N(x_j; μ, σ²)` per fitted class.
    pub fn log_scores(&self, x: &[f64]) -> Vec<(Bucket, f64)> {
        self.classes
            .iter()
            .map(|c| {
                let ll: f64 = x
                    .iter()
                    .zip(&c.mean)
                    .zip(&c.var)
                    .map(|((v, m), s2)| {
                        -0.5 * (2.0 * PI * s2).ln() - (v - m) * (v - m) / (2.0 * s2)
                    })
                    .sum();
                (c.bucket, c.log_prior + ll)
            })
            .collect()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Fitted `(mean, variance)` of one class, variance including the floor.
    pub fn class_params(&self, bucket: Bucket) -> Option<(&[f64], &[f64])> {
        self.classes
            .iter()
            .find(|c| c.bucket == bucket)
            .map(|c| (c.mean.as_slice(), c.var.as_slice()))
    }
}

impl Model for GnbModel {
    fn predict(&self, x: &[f64]) -> Bucket {
        argmax(self.log_scores(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> FeatureMatrix {
        let d = rows[0].len();
        FeatureMatrix::new(
            (0..rows.len()).map(|i| format!("r{i}")).collect(),
            (0..d).map(|j| format!("f{j}")).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn nearer_mean_wins_and_midpoint_tie() {
        let x = matrix(&[&[-1.5], &[-0.5], &[0.5], &[1.5]]);
        let y = [Bucket::Low, Bucket::Low, Bucket::Mid, Bucket::Mid];
        let m = GnbModel::fit(&x, &y).unwrap();
        assert_eq!(m.predict(&[0.9]), Bucket::Mid);
        assert_eq!(m.predict(&[-0.9]), Bucket::Low);
        assert_eq!(m.predict(&[0.0]), Bucket::Mid);

        let y = [Bucket::High, Bucket::High, Bucket::Low, Bucket::Low];
        let m = GnbModel::fit(&x, &y).unwrap();
        assert_eq!(m.predict(&[0.0]), Bucket::High);
    }

    #[test]
    fn single_row_class_is_fit_error() {
        let x = matrix(&[&[0.0], &[1.0], &[2.0]]);
        let y = [Bucket::High, Bucket::High, Bucket::Low];
        assert!(matches!(GnbModel::fit(&x, &y), Err(Error::Fit(_))));
    }

    #[test]
    fn log_scores_match_closed_form() {
        let x = matrix(&[
            &[0.0, 1.0],
            &[1.0, 3.0],
            &[2.0, 2.0],
            &[1.0, 0.0],
            &[5.0, 5.0],
            &[6.0, 7.0],
            &[7.0, 5.0],
            &[6.0, 3.0],
        ]);
        let y = [[Bucket::High; 4], [Bucket::Low; 4]].concat();
        let m = GnbModel::fit(&x, &y).unwrap();
        // hand values: HIGH means (1, 1.5), population vars (0.5, 1.25);
        // LOW means (6, 5), vars (0.5, 2)
        let eps = m.epsilon();
        let overall_var0 = {
            let v = [0.0, 1.0, 2.0, 1.0, 5.0, 6.0, 7.0, 6.0];
            let mu = v.iter().sum::<f64>() / 8.0;
            v.iter().map(|a| (a - mu) * (a - mu)).sum::<f64>() / 8.0
        };
        assert!((eps - 1e-9 * overall_var0).abs() < 1e-24);
        let dens = |x: f64, mu: f64, s2: f64| {
            (1.0 / (2.0 * PI * s2).sqrt() * (-(x - mu) * (x - mu) / (2.0 * s2)).exp()).ln()
        };
        let q = [2.5, 2.0];
        let s = m.log_scores(&q);
        let high = 0.5f64.ln() + dens(q[0], 1.0, 0.5 + eps) + dens(q[1], 1.5, 1.25 + eps);
        let low = 0.5f64.ln() + dens(q[0], 6.0, 0.5 + eps) + dens(q[1], 5.0, 2.0 + eps);
        assert!((s[0].1 - high).abs() < 1e-9);
        assert!((s[1].1 - low).abs() < 1e-9);
    }

    #[test]
    fn constant_features_give_majority() {
        let x = matrix(&[&[0.0], &[0.0], &[0.0], &[0.0], &[0.0]]);
        let y = [
            Bucket::Low,
            Bucket::Low,
            Bucket::Low,
            Bucket::Mid,
            Bucket::Mid,
        ];
        let m = GnbModel::fit(&x, &y).unwrap();
        assert_eq!(m.predict(&[0.0]), Bucket::Low);
    }
}
