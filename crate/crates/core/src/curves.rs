//! Learning curves over growing training sizes and their two slope
//! statistics: the coefficient of ln(n) fitted to validation error, and the
//! slope of the train/validation error gap against n.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::experiments::ols_fit;
use crate::learners::{self, Family, LearnerSpec};
use crate::math;
use crate::matrix::Matrix;
use crate::rng::{derive_seed, Prng};

/// One measured point of a learning curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub n_train: usize,
    pub train_error: f64,
    pub valid_error: f64,
}

/// Train/validation error against training size for one (subset, family)
/// pair. `n_train` is strictly increasing across points and the validation
/// set is identical for every point.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub points: Vec<CurvePoint>,
    pub family: Family,
    pub subset: usize,
    pub seed: u64,
    /// Fractions that produced no point (too few rows, single class, or a
    /// duplicate training size).
    pub skipped_fractions: Vec<f64>,
}

/// Least-squares fit of validation error against (1, ln n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFit {
    pub intercept: f64,
    pub slope: f64,
    pub residual_sse: f64,
}

/// Least-squares fit of (validation error − training error) against (1, n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_sse: f64,
}

/// Orders the training rows so every prefix keeps both classes represented
/// in proportion: per-class seeded shuffles merged by an exact integer
/// Bresenham walk. Larger prefixes are supersets of smaller ones by
/// construction.
fn stratified_ordering(labels: &[u8], rng: &mut Prng) -> Vec<usize> {
    let mut ones: Vec<usize> = Vec::new();
    let mut zeros: Vec<usize> = Vec::new();
    for (i, &y) in labels.iter().enumerate() {
        if y == 1 {
            ones.push(i);
        } else {
            zeros.push(i);
        }
    }
    rng.shuffle(&mut ones);
    rng.shuffle(&mut zeros);

    let n = labels.len();
    let a = ones.len();
    let mut order = Vec::with_capacity(n);
    let (mut next_one, mut next_zero) = (0, 0);
    let mut acc = 0usize;
    for _ in 0..n {
        acc += a;
        let take_one = if acc >= n {
            acc -= n;
            true
        } else {
            false
        };
        if take_one && next_one < ones.len() {
            order.push(ones[next_one]);
            next_one += 1;
        } else if next_zero < zeros.len() {
            order.push(zeros[next_zero]);
            next_zero += 1;
        } else {
            order.push(ones[next_one]);
            next_one += 1;
        }
    }
    order
}

/// Computes a learning curve: for each fraction f (strictly increasing,
/// in (0, 1]), trains on the first ⌈f·n⌉ rows of a seeded stratified
/// ordering of the training side, and evaluates on that same slice and on
/// the fixed validation side. Fractions yielding fewer than two rows, a
/// single class, or a repeated training size are skipped.
#[allow(clippy::too_many_arguments)]
pub fn compute_learning_curve(
    spec: &LearnerSpec,
    x_train: &Matrix,
    y_train: &[u8],
    x_valid: &Matrix,
    y_valid: &[u8],
    fractions: &[f64],
    subset: usize,
    seed: u64,
) -> Result<LearningCurve> {
    for pair in fractions.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidConfig(alloc::format!(
                "curve fractions must be strictly increasing: {} then {}",
                pair[0],
                pair[1]
            )));
        }
    }
    if fractions.iter().any(|&f| !(f > 0.0 && f <= 1.0)) {
        return Err(Error::InvalidConfig("curve fractions must lie in (0, 1]".into()));
    }

    let mut order_rng = Prng::new(derive_seed(seed, "curve.order", &[]));
    let order = stratified_ordering(y_train, &mut order_rng);
    let ordered_x = x_train.gather_rows(&order);
    let ordered_y: Vec<u8> = order.iter().map(|&i| y_train[i]).collect();

    let n = order.len();
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    let mut last_size = 0usize;

    for &fraction in fractions {
        let size = (math::ceil(fraction * n as f64) as usize).min(n);
        if size < 2 || size == last_size {
            skipped.push(fraction);
            continue;
        }
        let slice_y = &ordered_y[..size];
        let ones = slice_y.iter().filter(|&&y| y == 1).count();
        if ones == 0 || ones == size {
            skipped.push(fraction);
            continue;
        }
        let slice_x = ordered_x.head_rows(size);
        let train_seed = derive_seed(seed, "curve.train", &[size as u64]);
        let model = learners::train(spec, &slice_x, slice_y, train_seed)?;
        let train_eval = learners::evaluate(&model, &slice_x, slice_y)?;
        let valid_eval = learners::evaluate(&model, x_valid, y_valid)?;
        points.push(CurvePoint {
            n_train: size,
            train_error: train_eval.error,
            valid_error: valid_eval.error,
        });
        last_size = size;
    }

    if points.len() < 3 {
        return Err(Error::InsufficientCurve { points: points.len() });
    }

    Ok(LearningCurve {
        points,
        family: spec.family(),
        subset,
        seed,
        skipped_fractions: skipped,
    })
}

fn fit_against<F: Fn(&CurvePoint) -> (f64, f64)>(
    curve: &LearningCurve,
    map: F,
) -> Result<(f64, f64, f64)> {
    if curve.points.len() < 3 {
        return Err(Error::InsufficientCurve {
            points: curve.points.len(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = curve.points.iter().map(map).unzip();
    let (slope, intercept) = match ols_fit(&xs, &ys) {
        Ok(fit) => fit,
        Err(Error::ZeroVariance) => return Err(Error::SingularDesign),
        Err(e) => return Err(e),
    };
    let sse = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok((slope, intercept, sse))
}

/// Ordinary least squares of validation error on (1, ln n).
pub fn fit_log_model(curve: &LearningCurve) -> Result<LogFit> {
    let (slope, intercept, residual_sse) =
        fit_against(curve, |p| (math::ln(p.n_train as f64), p.valid_error))?;
    Ok(LogFit {
        intercept,
        slope,
        residual_sse,
    })
}

/// Ordinary least squares of (validation − training error) on (1, n).
pub fn fit_gap_slope(curve: &LearningCurve) -> Result<GapFit> {
    let (slope, intercept, residual_sse) =
        fit_against(curve, |p| (p.n_train as f64, p.valid_error - p.train_error))?;
    Ok(GapFit {
        slope,
        intercept,
        residual_sse,
    })
}

/// A curve with chosen (n, train, valid) values, for tests that exercise the
/// fit and correlation paths without training models.
#[cfg(test)]
pub(crate) fn curve_from(points: &[(usize, f64, f64)]) -> LearningCurve {
    LearningCurve {
        points: points
            .iter()
            .map(|&(n_train, train_error, valid_error)| CurvePoint {
                n_train,
                train_error,
                valid_error,
            })
            .collect(),
        family: Family::Logistic,
        subset: 0,
        seed: 0,
        skipped_fractions: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::TreeParams;
    use crate::synth;
    use alloc::vec;

    fn ten_fractions() -> Vec<f64> {
        (1..=10).map(|i| i as f64 / 10.0).collect()
    }

    #[test]
    fn curve_sizes_follow_fractions() {
        let (x, y) = synth::separable_dataset(400, 1.0, 2);
        let (xv, yv) = synth::separable_dataset(100, 1.0, 3);
        let spec = LearnerSpec::for_family(Family::Tree);
        let curve =
            compute_learning_curve(&spec, &x, &y, &xv, &yv, &ten_fractions(), 0, 5).unwrap();
        let sizes: Vec<usize> = curve.points.iter().map(|p| p.n_train).collect();
        assert_eq!(sizes, vec![40, 80, 120, 160, 200, 240, 280, 320, 360, 400]);
    }

    #[test]
    fn memorizer_has_zero_train_error_everywhere() {
        // Distinct values and unlimited depth: the tree memorizes each slice.
        let (x, y) = synth::separable_dataset(200, 1.0, 7);
        let (xv, yv) = synth::separable_dataset(50, 1.0, 8);
        let spec = LearnerSpec::Tree(TreeParams {
            max_depth: None,
            min_samples_split: 2,
        });
        let curve =
            compute_learning_curve(&spec, &x, &y, &xv, &yv, &ten_fractions(), 0, 5).unwrap();
        for p in &curve.points {
            assert_eq!(p.train_error, 0.0, "n = {}", p.n_train);
        }
    }

    #[test]
    fn too_few_points_is_an_error() {
        let (x, y) = synth::separable_dataset(50, 1.0, 1);
        let spec = LearnerSpec::for_family(Family::Tree);
        let err = compute_learning_curve(&spec, &x, &y, &x, &y, &[1.0], 0, 5).unwrap_err();
        assert_eq!(err, Error::InsufficientCurve { points: 1 });
    }

    #[test]
    fn curve_is_deterministic() {
        let (x, y) = synth::separable_dataset(120, 1.0, 3);
        let (xv, yv) = synth::separable_dataset(40, 1.0, 4);
        let spec = LearnerSpec::for_family(Family::Forest);
        let a = compute_learning_curve(&spec, &x, &y, &xv, &yv, &ten_fractions(), 1, 9).unwrap();
        let b = compute_learning_curve(&spec, &x, &y, &xv, &yv, &ten_fractions(), 1, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stratified_ordering_prefixes_nest_and_balance() {
        let labels: Vec<u8> = (0..100).map(|i| u8::from(i % 4 == 0)).collect();
        let mut rng = Prng::new(3);
        let order = stratified_ordering(&labels, &mut rng);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
        // Every reasonable prefix holds both classes.
        for size in [8, 20, 50, 100] {
            let ones = order[..size].iter().filter(|&&i| labels[i] == 1).count();
            assert!(ones > 0 && ones < size, "prefix {size} has {ones} ones");
        }
    }

    #[test]
    fn log_fit_recovers_noiseless_curve() {
        // e = 0.5 − 0.04·ln n exactly.
        let points: Vec<(usize, f64, f64)> = [20usize, 50, 100, 200, 400]
            .iter()
            .map(|&n| (n, 0.0, 0.5 - 0.04 * math::ln(n as f64)))
            .collect();
        let fit = fit_log_model(&curve_from(&points)).unwrap();
        assert!((fit.intercept - 0.5).abs() < 1e-9);
        assert!((fit.slope + 0.04).abs() < 1e-9);
        assert!(fit.residual_sse < 1e-18);
    }

    #[test]
    fn log_fit_flat_curve() {
        let points = [(10, 0.0, 0.2), (100, 0.0, 0.2), (1000, 0.0, 0.2)];
        let fit = fit_log_model(&curve_from(&points)).unwrap();
        assert!((fit.intercept - 0.2).abs() < 1e-12);
        assert!(fit.slope.abs() < 1e-12);
    }

    #[test]
    fn log_fit_decade_spaced_points() {
        let points = [(10, 0.0, 0.3), (100, 0.0, 0.2), (1000, 0.0, 0.1)];
        let fit = fit_log_model(&curve_from(&points)).unwrap();
        let expected = -0.1 / math::ln(10.0);
        assert!((fit.slope - expected).abs() < 1e-12, "slope {}", fit.slope);
    }

    #[test]
    fn gap_fit_examples() {
        // Converged curves: gap identically zero.
        let points = [(10, 0.2, 0.2), (20, 0.15, 0.15), (30, 0.1, 0.1)];
        let fit = fit_gap_slope(&curve_from(&points)).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!(fit.intercept.abs() < 1e-12);

        // gap = 0.5 − 0.001·n exactly.
        let points: Vec<(usize, f64, f64)> = [100usize, 200, 300]
            .iter()
            .map(|&n| (n, 0.0, 0.5 - 0.001 * n as f64))
            .collect();
        let fit = fit_gap_slope(&curve_from(&points)).unwrap();
        assert!((fit.slope + 0.001).abs() < 1e-12);

        // Hand-computed three-point fit.
        let points = [(40, 0.0, 0.30), (80, 0.0, 0.25), (120, 0.0, 0.23)];
        let fit = fit_gap_slope(&curve_from(&points)).unwrap();
        assert!((fit.slope + 8.75e-4).abs() < 1e-12, "slope {}", fit.slope);
    }

    #[test]
    fn fits_satisfy_normal_equations() {
        let points = [
            (40, 0.05, 0.31),
            (80, 0.04, 0.27),
            (120, 0.06, 0.22),
            (200, 0.05, 0.21),
        ];
        let curve = curve_from(&points);
        let log = fit_log_model(&curve).unwrap();
        let mut sum_r = 0.0;
        let mut sum_rx = 0.0;
        for p in &curve.points {
            let x = math::ln(p.n_train as f64);
            let r = p.valid_error - (log.intercept + log.slope * x);
            sum_r += r;
            sum_rx += r * x;
        }
        assert!(sum_r.abs() < 1e-9, "residual sum {sum_r}");
        assert!(sum_rx.abs() < 1e-9, "residual·x sum {sum_rx}");
    }
}
