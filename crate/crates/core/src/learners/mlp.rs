//! Single-hidden-layer perceptron trained with mini-batch gradient descent.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::logistic::{cross_entropy, sigmoid};
use super::{push_floats, MlpParams, TrainingMeta};
use crate::math;
use crate::matrix::Matrix;
use crate::rng::Prng;

/// Rectified-linear hidden layer, sigmoid output.
///
/// Weight layout: `w1` is hidden × inputs row-major, `w2` one weight per
/// hidden unit.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    w1: Vec<f64>,
    b1: Vec<f64>,
    w2: Vec<f64>,
    b2: f64,
    n_features: usize,
    hidden: usize,
    epochs_run: usize,
}

impl MlpModel {
    /// Weights drawn from a seeded uniform in (−1, 1) scaled by 1/√fan-in;
    /// biases start at zero.
    fn init(n_features: usize, hidden: usize, rng: &mut Prng) -> Self {
        let mut draw = |fan_in: usize| {
            let scale = 1.0 / math::sqrt(fan_in as f64);
            (rng.uniform() * 2.0 - 1.0) * scale
        };
        let w1 = (0..hidden * n_features).map(|_| draw(n_features)).collect();
        let w2 = (0..hidden).map(|_| draw(hidden)).collect();
        MlpModel {
            w1,
            b1: vec![0.0; hidden],
            w2,
            b2: 0.0,
            n_features,
            hidden,
            epochs_run: 0,
        }
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn meta(&self) -> TrainingMeta {
        TrainingMeta {
            iterations: self.epochs_run,
            converged: true,
        }
    }

    /// Pre-activation of the output unit.
    fn logit(&self, row: &[f64]) -> f64 {
        let mut z2 = self.b2;
        for j in 0..self.hidden {
            let mut z1 = self.b1[j];
            let w_row = &self.w1[j * self.n_features..(j + 1) * self.n_features];
            for (w, x) in w_row.iter().zip(row) {
                z1 += w * x;
            }
            if z1 > 0.0 {
                z2 += self.w2[j] * z1;
            }
        }
        z2
    }

    pub fn probability(&self, row: &[f64]) -> f64 {
        sigmoid(self.logit(row))
    }

    pub fn predict(&self, x: &Matrix) -> Vec<u8> {
        (0..x.rows())
            .map(|i| u8::from(self.probability(x.row(i)) >= 0.5))
            .collect()
    }

    pub(super) fn serialize_into(&self, out: &mut String) {
        out.push_str(&alloc::format!("hidden {}\n", self.hidden));
        push_floats(out, "w1", &self.w1);
        push_floats(out, "b1", &self.b1);
        push_floats(out, "w2", &self.w2);
        push_floats(out, "b2", &[self.b2]);
    }

    fn n_params(&self) -> usize {
        self.w1.len() + self.b1.len() + self.w2.len() + 1
    }

    fn param(&self, i: usize) -> f64 {
        let (w1, b1, w2) = (self.w1.len(), self.b1.len(), self.w2.len());
        if i < w1 {
            self.w1[i]
        } else if i < w1 + b1 {
            self.b1[i - w1]
        } else if i < w1 + b1 + w2 {
            self.w2[i - w1 - b1]
        } else {
            self.b2
        }
    }

    fn param_mut(&mut self, i: usize) -> &mut f64 {
        let (w1, b1, w2) = (self.w1.len(), self.b1.len(), self.w2.len());
        if i < w1 {
            &mut self.w1[i]
        } else if i < w1 + b1 {
            &mut self.b1[i - w1]
        } else if i < w1 + b1 + w2 {
            &mut self.w2[i - w1 - b1]
        } else {
            &mut self.b2
        }
    }
}

/// Mean cross-entropy over a batch.
fn batch_loss(model: &MlpModel, x: &Matrix, y: &[u8]) -> f64 {
    let total: f64 = (0..x.rows())
        .map(|i| cross_entropy(model.logit(x.row(i)), f64::from(y[i])))
        .sum();
    total / x.rows() as f64
}

/// Mean analytic gradients over a batch, flattened in param-index order.
fn batch_gradients(model: &MlpModel, x: &Matrix, y: &[u8]) -> Vec<f64> {
    let p = model.n_features;
    let h = model.hidden;
    let mut gw1 = vec![0.0; h * p];
    let mut gb1 = vec![0.0; h];
    let mut gw2 = vec![0.0; h];
    let mut gb2 = 0.0;

    let mut z1 = vec![0.0; h];
    for (i, &yi) in y.iter().enumerate() {
        let row = x.row(i);
        let mut z2 = model.b2;
        for (j, z1_j) in z1.iter_mut().enumerate() {
            let mut z = model.b1[j];
            let w_row = &model.w1[j * p..(j + 1) * p];
            for (w, v) in w_row.iter().zip(row) {
                z += w * v;
            }
            *z1_j = z;
            if z > 0.0 {
                z2 += model.w2[j] * z;
            }
        }
        let dz2 = sigmoid(z2) - f64::from(yi);
        gb2 += dz2;
        for j in 0..h {
            let a1 = z1[j].max(0.0);
            gw2[j] += dz2 * a1;
            if z1[j] > 0.0 {
                let dz1 = dz2 * model.w2[j];
                gb1[j] += dz1;
                for (g, v) in gw1[j * p..(j + 1) * p].iter_mut().zip(row) {
                    *g += dz1 * v;
                }
            }
        }
    }

    let scale = 1.0 / x.rows() as f64;
    let mut grads = Vec::with_capacity(model.n_params());
    grads.extend(gw1.iter().map(|g| g * scale));
    grads.extend(gb1.iter().map(|g| g * scale));
    grads.extend(gw2.iter().map(|g| g * scale));
    grads.push(gb2 * scale);
    grads
}

/// Rows are shuffled once with the training seed, then swept in fixed
/// mini-batches for every epoch.
pub(super) fn fit(x: &Matrix, y: &[u8], params: MlpParams, seed: u64) -> MlpModel {
    let mut rng = Prng::new(seed);
    let mut model = MlpModel::init(x.cols(), params.hidden_units, &mut rng);
    let order = rng.permutation(x.rows());

    for _ in 0..params.epochs {
        for batch in order.chunks(params.batch_size) {
            let bx = x.gather_rows(batch);
            let by: Vec<u8> = batch.iter().map(|&i| y[i]).collect();
            let grads = batch_gradients(&model, &bx, &by);
            for (i, g) in grads.iter().enumerate() {
                *model.param_mut(i) -= params.learning_rate * g;
            }
        }
        model.epochs_run += 1;
    }
    model
}

/// Compares analytic gradients against central finite differences on a tiny
/// seeded network and batch; returns the maximum relative error.
pub fn gradient_check(seed: u64) -> f64 {
    let mut rng = Prng::new(seed);
    let (n, p, h) = (8, 3, 4);
    let data: Vec<f64> = (0..n * p).map(|_| rng.standard_normal()).collect();
    let x = Matrix::from_rows(data, n, p);
    let y: Vec<u8> = (0..n).map(|i| u8::from(i % 2 == 0)).collect();

    let mut model = MlpModel::init(p, h, &mut rng);
    let analytic = batch_gradients(&model, &x, &y);

    let eps = 1e-5;
    let mut worst = 0.0f64;
    for (i, &exact) in analytic.iter().enumerate() {
        let original = model.param(i);
        *model.param_mut(i) = original + eps;
        let plus = batch_loss(&model, &x, &y);
        *model.param_mut(i) = original - eps;
        let minus = batch_loss(&model, &x, &y);
        *model.param_mut(i) = original;
        let numeric = (plus - minus) / (2.0 * eps);
        let denom = math::abs(exact).max(math::abs(numeric)).max(1e-6);
        worst = worst.max(math::abs(exact - numeric) / denom);
    }
    worst
}
