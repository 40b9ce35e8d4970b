//! CART decision tree with Gini impurity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{TrainingMeta, TreeParams};
use crate::matrix::Matrix;
use crate::rng::Prng;

#[derive(Debug, Clone, PartialEq)]
pub(super) enum Node {
    Leaf {
        label: u8,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel {
    nodes: Vec<Node>,
    n_features: usize,
}

/// How candidate features are chosen at each split.
pub(super) enum FeatureSelector<'a> {
    All,
    /// Sample k distinct features per split; candidates are evaluated in
    /// ascending index order so k = p reduces to `All` exactly.
    Sampled { k: usize, rng: &'a mut Prng },
}

struct Builder<'a, 'b> {
    x: &'a Matrix,
    y: &'a [u8],
    params: TreeParams,
    selector: FeatureSelector<'b>,
    nodes: Vec<Node>,
}

fn majority(y: &[u8], rows: &[usize]) -> u8 {
    let ones = rows.iter().filter(|&&i| y[i] == 1).count();
    u8::from(2 * ones >= rows.len())
}

fn gini(ones: f64, total: f64) -> f64 {
    if total == 0.0 {
        return 0.0;
    }
    let p1 = ones / total;
    let p0 = 1.0 - p1;
    1.0 - p1 * p1 - p0 * p0
}

impl<'a, 'b> Builder<'a, 'b> {
    fn candidates(&mut self) -> Vec<usize> {
        let p = self.x.cols();
        match &mut self.selector {
            FeatureSelector::All => (0..p).collect(),
            FeatureSelector::Sampled { k, rng } => {
                let k = (*k).min(p);
                if k == p {
                    return (0..p).collect();
                }
                let mut pool: Vec<usize> = (0..p).collect();
                for i in 0..k {
                    let j = i + rng.below(p - i);
                    pool.swap(i, j);
                }
                let mut picked = pool[..k].to_vec();
                picked.sort_unstable();
                picked
            }
        }
    }

    /// Best (feature, threshold, weighted impurity) over the candidates, or
    /// None when every candidate is constant on these rows. First-found wins
    /// exact impurity ties, so candidate order matters and is fixed.
    fn best_split(&mut self, rows: &[usize]) -> Option<(usize, f64)> {
        let total = rows.len() as f64;
        let total_ones = rows.iter().filter(|&&i| self.y[i] == 1).count() as f64;
        let mut best: Option<(usize, f64, f64)> = None;

        for feature in self.candidates() {
            let mut pairs: Vec<(f64, u8)> = rows
                .iter()
                .map(|&i| (self.x.get(i, feature), self.y[i]))
                .collect();
            pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

            let mut left_n = 0.0;
            let mut left_ones = 0.0;
            for w in 0..pairs.len() - 1 {
                left_n += 1.0;
                left_ones += f64::from(pairs[w].1);
                if pairs[w].0 == pairs[w + 1].0 {
                    continue;
                }
                let right_n = total - left_n;
                let right_ones = total_ones - left_ones;
                let impurity = (left_n * gini(left_ones, left_n)
                    + right_n * gini(right_ones, right_n))
                    / total;
                if best.is_none_or(|(_, _, b)| impurity < b) {
                    let threshold = (pairs[w].0 + pairs[w + 1].0) / 2.0;
                    best = Some((feature, threshold, impurity));
                }
            }
        }
        best.map(|(f, t, _)| (f, t))
    }

    fn build(&mut self, rows: &[usize], depth: usize) -> usize {
        let ones = rows.iter().filter(|&&i| self.y[i] == 1).count();
        let pure = ones == 0 || ones == rows.len();
        let depth_reached = self.params.max_depth.is_some_and(|d| depth >= d);

        if pure || depth_reached || rows.len() < self.params.min_samples_split {
            return self.leaf(rows);
        }
        let Some((feature, threshold)) = self.best_split(rows) else {
            return self.leaf(rows);
        };

        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
            rows.iter().partition(|&&i| self.x.get(i, feature) < threshold);

        // Reserve the split slot before recursing so node ids are preorder.
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { label: 0 });
        let left = self.build(&left_rows, depth + 1);
        let right = self.build(&right_rows, depth + 1);
        self.nodes[id] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        id
    }

    fn leaf(&mut self, rows: &[usize]) -> usize {
        self.nodes.push(Node::Leaf {
            label: majority(self.y, rows),
        });
        self.nodes.len() - 1
    }
}

pub(super) fn fit(x: &Matrix, y: &[u8], params: TreeParams) -> TreeModel {
    fit_on_rows(x, y, &(0..x.rows()).collect::<Vec<_>>(), params, FeatureSelector::All)
}

pub(super) fn fit_on_rows(
    x: &Matrix,
    y: &[u8],
    rows: &[usize],
    params: TreeParams,
    selector: FeatureSelector<'_>,
) -> TreeModel {
    let mut builder = Builder {
        x,
        y,
        params,
        selector,
        nodes: Vec::new(),
    };
    builder.build(rows, 0);
    TreeModel {
        nodes: builder.nodes,
        n_features: x.cols(),
    }
}

impl TreeModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn meta(&self) -> TrainingMeta {
        TrainingMeta {
            iterations: self.nodes.len(),
            converged: true,
        }
    }

    pub fn predict_row(&self, row: &[f64]) -> u8 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { label } => return *label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[*feature] < *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn predict(&self, x: &Matrix) -> Vec<u8> {
        (0..x.rows()).map(|i| self.predict_row(x.row(i))).collect()
    }

    pub(super) fn serialize_into(&self, out: &mut String) {
        out.push_str(&format!("nodes {}\n", self.nodes.len()));
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf { label } => out.push_str(&format!("node {i} leaf {label}\n")),
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => out.push_str(&format!("node {i} split {feature} {threshold:?} {left} {right}\n")),
            }
        }
    }
}
