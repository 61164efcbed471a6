use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{argmax, check_training, Bucket, FeatureMatrix, Model};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestParams {
    pub trees: usize,
    pub max_depth: usize,
}

impl Default for ForestParams {
    fn default() -> Self {
        Self {
            trees: 100,
            max_depth: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(Bucket),
    Split {
        feature: usize,
        threshold: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    fn predict(&self, x: &[f64]) -> Bucket {
        let mut node = self;
        loop {
            match node {
                Node::Leaf(b) => return *b,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if x[*feature] <= *threshold {
                        left
                    } else {
                        right
                    }
                }
            }
        }
    }
}

fn majority(counts: [usize; 3]) -> Bucket {
    argmax(
        Bucket::ALL
            .into_iter()
            .map(|b| (b, counts[b.index()] as f64)),
    )
}

/// Gini impurity times the node size, so child sums compare directly.
fn weighted_gini(counts: &[usize; 3], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    nf - counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / nf
}

struct TreeBuilder<'a> {
    x: &'a FeatureMatrix,
    y: &'a [Bucket],
    max_depth: usize,
    mtry: usize,
}

impl TreeBuilder<'_> {
    fn build(&self, idx: &mut [usize], depth: usize, rng: &mut ChaCha8Rng) -> Node {
        let mut counts = [0usize; 3];
        for &i in idx.iter() {
            counts[self.y[i].index()] += 1;
        }
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || depth >= self.max_depth || idx.len() < 2 {
            return Node::Leaf(majority(counts));
        }
        let parent = weighted_gini(&counts, idx.len());
        let mut best: Option<(f64, usize, f64)> = None;
        let d = self.x.d();
        for feature in sample(rng, d, self.mtry).into_vec() {
            idx.sort_by(|&a, &b| {
                self.x.row(a)[feature]
                    .total_cmp(&self.x.row(b)[feature])
                    .then(a.cmp(&b))
            });
            let mut left = [0usize; 3];
            for k in 0..idx.len() - 1 {
                left[self.y[idx[k]].index()] += 1;
                let (v, next) = (self.x.row(idx[k])[feature], self.x.row(idx[k + 1])[feature]);
                if v == next {
                    continue;
                }
                let right = [
                    counts[0] - left[0],
                    counts[1] - left[1],
                    counts[2] - left[2],
                ];
                let score = weighted_gini(&left, k + 1) + weighted_gini(&right, idx.len() - k - 1);
                if best.is_none_or(|(s, _, _)| score < s) {
                    best = Some((score, feature, v + (next - v) / 2.0));
                }
            }
        }
        match best {
            Some((score, feature, threshold)) if score < parent => {
                let mid = partition(idx, |i| self.x.row(i)[feature] <= threshold);
                let (l, r) = idx.split_at_mut(mid);
                Node::Split {
                    feature,
                    threshold,
                    left: Box::new(self.build(l, depth + 1, rng)),
                    right: Box::new(self.build(r, depth + 1, rng)),
                }
            }
            _ => Node::Leaf(majority(counts)),
        }
    }
}

/// Stable in-place partition; returns the number of elements satisfying `pred`.
fn partition(idx: &mut [usize], pred: impl Fn(usize) -> bool) -> usize {
    let (yes, no): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| pred(i));
    let k = yes.len();
    for (slot, v) in idx.iter_mut().zip(yes.into_iter().chain(no)) {
        *slot = v;
    }
    k
}

/// Bagged CART trees with Gini splits and √d candidate features per split.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestModel {
    trees: Vec<Node>,
}

impl ForestModel {
    /// Tree `t` draws from its own ChaCha stream `(seed, t)`, so the forest
    /// does not depend on how trees are scheduled.
    pub fn fit(x: &FeatureMatrix, y: &[Bucket], params: ForestParams, seed: u64) -> Result<Self> {
        check_training(x, y)?;
        let d = x.d();
        let mtry = ((d as f64).sqrt() as usize).clamp(1, d.max(1));
        let builder = TreeBuilder {
            x,
            y,
            max_depth: params.max_depth,
            mtry,
        };
        let n = x.n();
        let trees = (0..params.trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                let mut idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                if d == 0 {
                    let mut counts = [0usize; 3];
                    idx.iter().for_each(|&i| counts[y[i].index()] += 1);
                    return Node::Leaf(majority(counts));
                }
                builder.build(&mut idx, 0, &mut rng)
            })
            .collect();
        Ok(Self { trees })
    }

    pub fn votes(&self, x: &[f64]) -> [usize; 3] {
        let mut v = [0usize; 3];
        for t in &self.trees {
            v[t.predict(x).index()] += 1;
        }
        v
    }
}

impl Model for ForestModel {
    fn predict(&self, x: &[f64]) -> Bucket {
        majority(self.votes(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_data(n: usize, seed: u64) -> (FeatureMatrix, Vec<Bucket>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for _ in 0..n {
            let (a, b): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            rows.push(vec![a, b]);
            y.push(if (a > 0.0) == (b > 0.0) {
                Bucket::High
            } else {
                Bucket::Low
            });
        }
        let m = FeatureMatrix::new(
            (0..n).map(|i| format!("r{i}")).collect(),
            vec!["a".into(), "b".into()],
            rows,
        )
        .unwrap();
        (m, y)
    }

    #[test]
    fn learns_xor() {
        let (x, y) = xor_data(200, 1);
        let (tx, ty) = xor_data(200, 2);
        let m = ForestModel::fit(&x, &y, ForestParams::default(), 42).unwrap();
        let correct = tx
            .rows()
            .zip(&ty)
            .filter(|(r, l)| m.predict(r) == **l)
            .count();
        assert!(correct as f64 / 200.0 >= 0.9, "{correct}");
    }

    #[test]
    fn single_class_and_determinism() {
        let (x, _) = xor_data(30, 5);
        let single = vec![Bucket::Mid; 30];
        let m = ForestModel::fit(&x, &single, ForestParams::default(), 1).unwrap();
        assert!(x.rows().all(|r| m.predict(r) == Bucket::Mid));

        let (x, y) = xor_data(100, 6);
        let (tx, _) = xor_data(50, 7);
        let a = ForestModel::fit(&x, &y, ForestParams::default(), 11).unwrap();
        let b = ForestModel::fit(&x, &y, ForestParams::default(), 11).unwrap();
        assert_eq!(a, b);
        let pa: Vec<Bucket> = tx.rows().map(|r| a.predict(r)).collect();
        let pb: Vec<Bucket> = tx.rows().map(|r| b.predict(r)).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn vote_tie_prefers_high() {
        assert_eq!(majority([2, 0, 2]), Bucket::High);
        assert_eq!(majority([0, 3, 3]), Bucket::Mid);
    }
}
