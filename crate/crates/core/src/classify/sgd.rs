use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{argmax, check_training, class_counts, Bucket, FeatureMatrix, Model};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgdParams {
    pub epochs: usize,
    pub learning_rate: f64,
}

impl Default for SgdParams {
    fn default() -> Self {
        Self {
            epochs: 100,
            learning_rate: 0.01,
        }
    }
}

/// One-vs-rest logistic regression trained by plain SGD on standardized
/// features.
#[derive(Debug, Clone, PartialEq)]
pub struct SgdModel {
    mean: Vec<f64>,
    scale: Vec<f64>,
    /// `(class, weights, bias)` for each class seen in training.
    pub coefficients: Vec<(Bucket, Vec<f64>, f64)>,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn dot(w: &[f64], x: &[f64]) -> f64 {
    w.iter().zip(x).map(|(a, b)| a * b).sum()
}

impl SgdModel {
    pub fn fit(x: &FeatureMatrix, y: &[Bucket], params: SgdParams, seed: u64) -> Result<Self> {
        check_training(x, y)?;
        if x.n() < 3 {
            return Err(Error::Fit(format!("need at least 3 rows, got {}", x.n())));
        }
        let counts = class_counts(y);
        let present: Vec<Bucket> = Bucket::ALL
            .into_iter()
            .filter(|b| counts[b.index()] > 0)
            .collect();
        if present.len() < 2 {
            return Err(Error::Fit("training data has a single class".into()));
        }
        let d = x.d();
        let n = x.n() as f64;
        let mut mean = vec![0.0; d];
        for r in x.rows() {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v / n;
            }
        }
        let mut scale = vec![0.0; d];
        for r in x.rows() {
            for ((s, v), m) in scale.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in &mut scale {
            *s = if *s > 0.0 { s.sqrt() } else { 1.0 };
        }
        let z: Vec<Vec<f64>> = x
            .rows()
            .map(|r| {
                r.iter()
                    .zip(&mean)
                    .zip(&scale)
                    .map(|((v, m), s)| (v - m) / s)
                    .collect()
            })
            .collect();

        let mut coefficients: Vec<(Bucket, Vec<f64>, f64)> =
            present.iter().map(|&b| (b, vec![0.0; d], 0.0)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..x.n()).collect();
        let lr = params.learning_rate;
        for _ in 0..params.epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                for (b, w, bias) in &mut coefficients {
                    let target = if y[i] == *b { 1.0 } else { 0.0 };
                    let g = sigmoid(dot(w, &z[i]) + *bias) - target;
                    for (wj, xj) in w.iter_mut().zip(&z[i]) {
                        *wj -= lr * g * xj;
                    }
                    *bias -= lr * g;
                }
            }
        }
        Ok(Self {
            mean,
            scale,
            coefficients,
        })
    }

    pub fn scores(&self, x: &[f64]) -> Vec<(Bucket, f64)> {
        let z: Vec<f64> = x
            .iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, m), s)| (v - m) / s)
            .collect();
        self.coefficients
            .iter()
            .map(|(b, w, bias)| (*b, dot(w, &z) + bias))
            .collect()
    }
}

impl Model for SgdModel {
    fn predict(&self, x: &[f64]) -> Bucket {
        argmax(self.scores(x))
    }
}
