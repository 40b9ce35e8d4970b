//! Property tests for the statistical invariants, run over 1000 seeded cases
//! each.

use proptest::collection::vec;
use proptest::prelude::*;

use suffstat_core::effects::{
    average_effect_size, categorical_effect_magnitude, cohens_d, odds_ratio, ContingencyTable,
    EffectOptions,
};
use suffstat_core::experiments::{ols_fit, r_squared};
use suffstat_core::ingest::{
    drop_incomplete_rows, encode_categorical, parse_table, partition_subsets, standardize_column,
    stratified_split,
};
use suffstat_core::synth::{synth_dataset, FeatureTarget, SynthSpec};

fn group() -> impl Strategy<Value = Vec<f64>> {
    vec(-100.0..100.0f64, 2..20)
}

fn spread_out(v: &[f64]) -> bool {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64 > 1e-4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cohens_d_is_antisymmetric(a in group(), b in group()) {
        let lhs = cohens_d(&a, &b).unwrap();
        let rhs = cohens_d(&b, &a).unwrap();
        // Exact: the numerator negates exactly and the pooled sd is identical.
        prop_assert_eq!(lhs.to_bits(), (-rhs).to_bits());
    }

    #[test]
    fn cohens_d_is_affine_invariant(
        a in group().prop_filter("needs spread", |v| spread_out(v)),
        b in group(),
        scale in 0.1..10.0f64,
        shift in -100.0..100.0f64,
    ) {
        let d0 = cohens_d(&a, &b).unwrap();
        let ta: Vec<f64> = a.iter().map(|v| scale * v + shift).collect();
        let tb: Vec<f64> = b.iter().map(|v| scale * v + shift).collect();
        let d1 = cohens_d(&ta, &tb).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-9, "{} vs {}", d0, d1);
    }

    #[test]
    fn cohens_d_negative_scale_flips_sign(
        a in group().prop_filter("needs spread", |v| spread_out(v)),
        b in group(),
        scale in 0.1..10.0f64,
    ) {
        let d0 = cohens_d(&a, &b).unwrap();
        let ta: Vec<f64> = a.iter().map(|v| -scale * v).collect();
        let tb: Vec<f64> = b.iter().map(|v| -scale * v).collect();
        let d1 = cohens_d(&ta, &tb).unwrap();
        prop_assert!((d0 + d1).abs() < 1e-9, "{} vs {}", d0, d1);
    }

    #[test]
    fn odds_ratio_row_swap_inverts(a in 1u64..40, b in 1u64..40, c in 1u64..40, d in 1u64..40) {
        let or = odds_ratio(&ContingencyTable::from_counts(a, b, c, d));
        let swapped = odds_ratio(&ContingencyTable::from_counts(c, d, a, b));
        prop_assert!((or * swapped - 1.0).abs() < 1e-12, "{} * {}", or, swapped);
    }

    #[test]
    fn categorical_magnitude_ignores_label_polarity(
        codes in vec(0usize..4, 20..60),
        flip_at in 5usize..15,
    ) {
        let labels: Vec<u8> = (0..codes.len()).map(|i| u8::from(i < flip_at)).collect();
        let flipped: Vec<u8> = labels.iter().map(|&y| 1 - y).collect();
        let distinct = {
            let mut c = codes.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        prop_assume!(distinct >= 2);
        let e0 = categorical_effect_magnitude(&codes, &labels).unwrap();
        let e1 = categorical_effect_magnitude(&codes, &flipped).unwrap();
        prop_assert!((e0.magnitude - e1.magnitude).abs() < 1e-12);
    }

    #[test]
    fn ols_satisfies_normal_equations(
        x in vec(-50.0..50.0f64, 3..25).prop_filter("needs spread", |v| spread_out(v)),
        y_seed in vec(-50.0..50.0f64, 25usize..26),
    ) {
        let y: Vec<f64> = x.iter().enumerate().map(|(i, _)| y_seed[i % y_seed.len()]).collect();
        let (slope, intercept) = ols_fit(&x, &y).unwrap();
        let mut sum_r = 0.0;
        let mut sum_rx = 0.0;
        for (xi, yi) in x.iter().zip(&y) {
            let r = yi - (intercept + slope * xi);
            sum_r += r;
            sum_rx += r * xi;
        }
        let scale = x.len() as f64 * 50.0;
        prop_assert!(sum_r.abs() < 1e-9 * scale, "sum r = {}", sum_r);
        prop_assert!(sum_rx.abs() < 1e-9 * scale * 50.0, "sum rx = {}", sum_rx);
    }

    #[test]
    fn r_squared_is_symmetric_bounded_and_affine_invariant(
        x in vec(-50.0..50.0f64, 3..25).prop_filter("needs spread", |v| spread_out(v)),
        y in vec(-50.0..50.0f64, 3..25).prop_filter("needs spread", |v| spread_out(v)),
        a in 0.1..5.0f64,
        b in -20.0..20.0f64,
        c in 0.1..5.0f64,
        d in -20.0..20.0f64,
    ) {
        let n = x.len().min(y.len());
        let x = &x[..n];
        let y = &y[..n];
        let r2 = r_squared(x, y);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&r2));
        prop_assert!((r2 - r_squared(y, x)).abs() < 1e-12);

        let tx: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let ty: Vec<f64> = y.iter().map(|v| c * v + d).collect();
        prop_assert!((r2 - r_squared(&tx, &ty)).abs() < 1e-9);
    }

    #[test]
    fn encode_round_trips(tokens in vec("[a-d]{1,3}", 1..30)) {
        let (codes, map) = encode_categorical(&tokens);
        let decoded: Vec<&str> = codes.iter().map(|&c| map.token_of(c)).collect();
        prop_assert_eq!(decoded, tokens.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        for (code, _) in map.tokens().iter().enumerate() {
            prop_assert!(codes.contains(&code));
        }
    }

    #[test]
    fn partition_blocks_are_disjoint_and_sized(
        n in 10usize..200,
        k in 1usize..6,
        m in 2usize..12,
        seed in any::<u64>(),
    ) {
        prop_assume!(k * m <= n);
        let p = partition_subsets(n, k, m, seed).unwrap();
        let mut seen = std::collections::HashSet::new();
        for subset in &p.subsets {
            prop_assert_eq!(subset.len(), m);
            for &i in subset {
                prop_assert!(i < n);
                prop_assert!(seen.insert(i), "row {} repeated", i);
            }
        }
    }

    #[test]
    fn standardized_columns_have_unit_moments(
        values in vec(-1000.0..1000.0f64, 2..50).prop_filter("needs spread", |v| spread_out(v)),
    ) {
        let (z, params) = standardize_column(&values, None);
        prop_assert!(params.sd > 0.0);
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / z.len() as f64;
        prop_assert!(mean.abs() < 1e-9, "mean {}", mean);
        prop_assert!((var.sqrt() - 1.0).abs() < 1e-9, "sd {}", var.sqrt());
    }

    #[test]
    fn stratified_split_partitions_subset(
        seed in any::<u64>(),
        labels in vec(0u8..2, 10..80),
        fraction in 0.1..0.9f64,
    ) {
        let ones = labels.iter().filter(|&&y| y == 1).count();
        prop_assume!(ones > 0 && ones < labels.len());
        let indices: Vec<usize> = (100..100 + labels.len()).collect();
        let split = stratified_split(&indices, &labels, fraction, seed).unwrap();
        prop_assert!(!split.train.is_empty());
        prop_assert!(!split.valid.is_empty());
        let mut all: Vec<usize> = split.train.iter().chain(&split.valid).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, indices);
    }
}

proptest! {
    // Heavier cases: fewer iterations keep the suite quick.
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn average_effect_is_order_invariant(seed in any::<u64>(), row_seed in any::<u64>()) {
        let spec = SynthSpec {
            n_rows: 60,
            balance: 0.4,
            features: vec![
                FeatureTarget::NumericD(0.5),
                FeatureTarget::CategoricalOr(2.0),
                FeatureTarget::NumericD(0.0),
            ],
            seed,
        };
        let data = synth_dataset(&spec).unwrap();
        let ones = data.labels.iter().filter(|&&y| y == 1).count();
        prop_assume!(ones >= 2 && data.labels.len() - ones >= 2);

        let base = average_effect_size(&data.matrix, &data.labels, "y", EffectOptions::default())
            .unwrap();

        // Row permutation.
        let mut order: Vec<usize> = (0..60).collect();
        let mut rng = suffstat_core::rng::Prng::new(row_seed);
        rng.shuffle(&mut order);
        let shuffled = data.matrix.gather_rows(&order);
        let shuffled_labels: Vec<u8> = order.iter().map(|&i| data.labels[i]).collect();
        let permuted =
            average_effect_size(&shuffled, &shuffled_labels, "y", EffectOptions::default())
                .unwrap();
        prop_assert!((base.average - permuted.average).abs() < 1e-12);

        // Feature permutation: drop-and-compare per-feature magnitudes by name.
        for effect in &base.per_feature {
            let twin = permuted
                .per_feature
                .iter()
                .find(|e| e.name == effect.name)
                .unwrap();
            prop_assert!((effect.magnitude - twin.magnitude).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_then_clean_is_deterministic(
        rows in vec(vec("[a-c?]{1,2}", 3usize..4), 1..20),
    ) {
        let text: String = rows
            .iter()
            .map(|r| r.join(","))
            .collect::<Vec<_>>()
            .join("\n");
        let t1 = parse_table(&text, false, "?").unwrap();
        let t2 = parse_table(&text, false, "?").unwrap();
        prop_assert_eq!(&t1, &t2);
        let c1 = drop_incomplete_rows(&t1);
        for row in c1.rows() {
            prop_assert!(row.iter().all(|c| c != "?"));
        }
    }
}
