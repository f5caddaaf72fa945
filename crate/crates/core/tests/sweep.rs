use edt_texture::classify::{cross_validate, ClassifierKind, FeatureMatrix};
use edt_texture::descriptors::DescriptorId;
use edt_texture::harness::{
    combined_vector, extract_features, generate_synthetic, render_curve, render_report, run_sweep, SweepConfig,
    SweepMode, SynthSpec,
};
use edt_texture::LabeledDataset;

fn small_dataset() -> LabeledDataset {
    generate_synthetic(&SynthSpec::with_palette(4, 8, 32, 3)).unwrap()
}

fn config(mode: SweepMode, i_min: u8, i_max: u8) -> SweepConfig {
    SweepConfig {
        mode,
        i_min,
        i_max,
        folds: 4,
        seed: 7,
        ..SweepConfig::default()
    }
}

#[test]
fn baseline_mode_matches_direct_cross_validation() {
    let ds = small_dataset();
    let result = run_sweep(&ds, &config(SweepMode::Baseline, 1, 150)).unwrap();
    assert!(result.per_iteration.is_empty());
    assert_eq!(result.best_i, None);

    let rows: Vec<Vec<f64>> = ds
        .images
        .iter()
        .map(|img| extract_features(img, DescriptorId::Lbp).unwrap().into_values())
        .collect();
    let m = FeatureMatrix::from_rows(&rows, ds.labels.clone()).unwrap();
    assert_eq!(result.baseline, cross_validate(&m, ClassifierKind::Knn1, 4, 7).unwrap());
    assert_eq!(render_report(&result).lines().count(), 2);
}

#[test]
fn single_iteration() {
    let result = run_sweep(&small_dataset(), &config(SweepMode::Combined, 5, 5)).unwrap();
    assert_eq!(result.per_iteration.len(), 1);
    assert_eq!(result.per_iteration[0].0, 5);
    assert_eq!(result.best_i, Some(5));
    assert_eq!(render_report(&result).lines().count(), 4);
    assert_eq!(render_curve(&result).lines().count(), 2);
}

#[test]
fn best_is_first_maximum() {
    let ds = small_dataset();
    for mode in [SweepMode::Combined, SweepMode::EdtOnly] {
        let result = run_sweep(&ds, &config(mode, 60, 90)).unwrap();
        let max = result
            .per_iteration
            .iter()
            .map(|(_, r)| r.mean)
            .fold(f64::MIN, f64::max);
        let first = result.per_iteration.iter().find(|(_, r)| r.mean == max).unwrap().0;
        assert_eq!(result.best_i, Some(first));
        let i: Vec<u8> = result.per_iteration.iter().map(|e| e.0).collect();
        assert_eq!(i, (60..=90).collect::<Vec<u8>>());
    }
}

#[test]
fn feature_cache_is_invisible() {
    let ds = small_dataset();
    let cached = config(SweepMode::Combined, 100, 110);
    let uncached = SweepConfig {
        cache_original: false,
        ..cached.clone()
    };
    assert_eq!(run_sweep(&ds, &cached).unwrap(), run_sweep(&ds, &uncached).unwrap());
}

#[test]
fn independent_of_thread_count() {
    let ds = small_dataset();
    let cfg = SweepConfig {
        descriptor: DescriptorId::Glcm,
        classifier: ClassifierKind::Gnb,
        ..config(SweepMode::Combined, 120, 135)
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| render_report(&run_sweep(&ds, &cfg).unwrap()))
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

#[test]
fn combined_vector_first_half_is_original() {
    let ds = small_dataset();
    for d in DescriptorId::ALL {
        let img = &ds.images[d as usize % ds.len()];
        let original = extract_features(img, d).unwrap();
        for i in [0u8, 77, 150, 255] {
            let c = combined_vector(img, i, d).unwrap();
            assert_eq!(&c.values()[..d.len()], original.values());
        }
    }
}

#[test]
fn invalid_configs_rejected() {
    let ds = small_dataset();
    assert!(run_sweep(&ds, &config(SweepMode::Combined, 10, 9)).is_err());
    let one_fold = SweepConfig {
        folds: 1,
        ..config(SweepMode::Combined, 1, 2)
    };
    assert!(run_sweep(&ds, &one_fold).is_err());
    // more folds than images per class is allowed: classes are dealt round-robin
    let many_folds = SweepConfig {
        folds: 9,
        ..config(SweepMode::Baseline, 1, 2)
    };
    assert_eq!(run_sweep(&ds, &many_folds).unwrap().baseline.fold_accuracies.len(), 9);
}
