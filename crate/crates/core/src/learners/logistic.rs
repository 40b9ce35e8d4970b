//! Logistic regression via full-batch gradient descent on cross-entropy.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{push_floats, LogisticParams, TrainingMeta};
use crate::math;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    weights: Vec<f64>,
    bias: f64,
    iterations: usize,
    converged: bool,
}

pub(super) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + math::exp(-z))
    } else {
        let e = math::exp(z);
        e / (1.0 + e)
    }
}

/// Numerically stable per-sample cross-entropy: max(z,0) − z·y + ln(1+e^−|z|).
pub(super) fn cross_entropy(z: f64, y: f64) -> f64 {
    z.max(0.0) - z * y + math::ln_1p(math::exp(-math::abs(z)))
}

fn mean_loss(x: &Matrix, y: &[u8], weights: &[f64], bias: f64) -> f64 {
    let total: f64 = y
        .iter()
        .enumerate()
        .map(|(i, &yi)| cross_entropy(dot(x.row(i), weights) + bias, f64::from(yi)))
        .sum();
    total / x.rows() as f64
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// Weights start at zero; each iteration takes one full-batch step and stops
/// early once the loss change drops below the tolerance.
pub(super) fn fit(x: &Matrix, y: &[u8], params: LogisticParams) -> LogisticModel {
    let n = x.rows();
    let p = x.cols();
    let mut weights = vec![0.0; p];
    let mut bias = 0.0;
    let mut prev_loss = mean_loss(x, y, &weights, bias);
    let mut iterations = 0;
    let mut converged = false;

    for _ in 0..params.max_iterations {
        let mut grad_w = vec![0.0; p];
        let mut grad_b = 0.0;
        for (i, &yi) in y.iter().enumerate() {
            let row = x.row(i);
            let residual = sigmoid(dot(row, &weights) + bias) - f64::from(yi);
            for (g, v) in grad_w.iter_mut().zip(row) {
                *g += residual * v;
            }
            grad_b += residual;
        }
        let scale = params.learning_rate / n as f64;
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= scale * g;
        }
        bias -= scale * grad_b;
        iterations += 1;

        let loss = mean_loss(x, y, &weights, bias);
        if math::abs(prev_loss - loss) < params.tolerance {
            converged = true;
            break;
        }
        prev_loss = loss;
    }

    LogisticModel {
        weights,
        bias,
        iterations,
        converged,
    }
}

impl LogisticModel {
    pub fn n_features(&self) -> usize {
        self.weights.len()
    }

    pub fn meta(&self) -> TrainingMeta {
        TrainingMeta {
            iterations: self.iterations,
            converged: self.converged,
        }
    }

    pub fn probability(&self, row: &[f64]) -> f64 {
        sigmoid(dot(row, &self.weights) + self.bias)
    }

    pub fn predict(&self, x: &Matrix) -> Vec<u8> {
        (0..x.rows())
            .map(|i| u8::from(self.probability(x.row(i)) >= 0.5))
            .collect()
    }

    pub(super) fn serialize_into(&self, out: &mut String) {
        push_floats(out, "bias", &[self.bias]);
        push_floats(out, "weights", &self.weights);
    }
}

/// Runs gradient descent while recording the loss after every update.
/// The returned sequence is what the non-increasing-loss property inspects.
pub fn loss_trajectory(x: &Matrix, y: &[u8], params: LogisticParams) -> Vec<f64> {
    let n = x.rows();
    let p = x.cols();
    let mut weights = vec![0.0; p];
    let mut bias = 0.0;
    let mut losses = vec![mean_loss(x, y, &weights, bias)];

    for _ in 0..params.max_iterations {
        let mut grad_w = vec![0.0; p];
        let mut grad_b = 0.0;
        for (i, &yi) in y.iter().enumerate() {
            let row = x.row(i);
            let residual = sigmoid(dot(row, &weights) + bias) - f64::from(yi);
            for (g, v) in grad_w.iter_mut().zip(row) {
                *g += residual * v;
            }
            grad_b += residual;
        }
        let scale = params.learning_rate / n as f64;
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= scale * g;
        }
        bias -= scale * grad_b;

        let loss = mean_loss(x, y, &weights, bias);
        let done = math::abs(losses[losses.len() - 1] - loss) < params.tolerance;
        losses.push(loss);
        if done {
            break;
        }
    }
    losses
}
