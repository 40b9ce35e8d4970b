//! Random forest: bagged CART trees with per-split feature sampling.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::tree::{FeatureSelector, TreeModel};
use super::{tree, ForestParams, TrainingMeta};
use crate::math;
use crate::matrix::Matrix;
use crate::rng::{derive_seed, Prng};

#[derive(Debug, Clone, PartialEq)]
pub struct ForestModel {
    trees: Vec<TreeModel>,
    n_features: usize,
}

pub(super) fn fit(x: &Matrix, y: &[u8], params: ForestParams, seed: u64) -> ForestModel {
    let n = x.rows();
    let p = x.cols();
    let k = params
        .features_per_split
        .unwrap_or_else(|| math::ceil(math::sqrt(p as f64)) as usize)
        .min(p);

    let trees = (0..params.n_trees)
        .map(|t| {
            let mut rng = Prng::new(derive_seed(seed, "forest-tree", &[t as u64]));
            let rows: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.below(n)).collect()
            } else {
                (0..n).collect()
            };
            let selector = if k == p {
                FeatureSelector::All
            } else {
                FeatureSelector::Sampled { k, rng: &mut rng }
            };
            tree::fit_on_rows(x, y, &rows, params.tree, selector)
        })
        .collect();

    ForestModel {
        trees,
        n_features: p,
    }
}

impl ForestModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn meta(&self) -> TrainingMeta {
        TrainingMeta {
            iterations: self.trees.len(),
            converged: true,
        }
    }

    pub fn predict(&self, x: &Matrix) -> Vec<u8> {
        (0..x.rows())
            .map(|i| {
                let row = x.row(i);
                let ones: usize = self
                    .trees
                    .iter()
                    .map(|t| usize::from(t.predict_row(row)))
                    .sum();
                u8::from(2 * ones >= self.trees.len())
            })
            .collect()
    }

    pub(super) fn serialize_into(&self, out: &mut String) {
        out.push_str(&format!("trees {}\n", self.trees.len()));
        for (i, t) in self.trees.iter().enumerate() {
            out.push_str(&format!("tree {i}\n"));
            t.serialize_into(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{predict, train, Family, LearnerSpec, TreeParams};
    use crate::synth;

    #[test]
    fn single_tree_no_bootstrap_equals_plain_tree() {
        let (x, y) = synth::separable_dataset(150, 0.5, 9);
        let forest_spec = LearnerSpec::Forest(ForestParams {
            n_trees: 1,
            tree: TreeParams::default(),
            features_per_split: Some(x.cols()),
            bootstrap: false,
        });
        let tree_spec = LearnerSpec::for_family(Family::Tree);
        let forest = train(&forest_spec, &x, &y, 4).unwrap();
        let tree = train(&tree_spec, &x, &y, 4).unwrap();
        assert_eq!(predict(&forest, &x).unwrap(), predict(&tree, &x).unwrap());
    }

    #[test]
    fn vote_tie_breaks_to_one() {
        let model = ForestModel {
            trees: Vec::new(),
            n_features: 1,
        };
        // Zero trees: 0 ones >= 0 needed, so the tie rule yields 1.
        let x = Matrix::from_rows(alloc::vec![0.0], 1, 1);
        assert_eq!(model.predict(&x), alloc::vec![1]);
    }
}
