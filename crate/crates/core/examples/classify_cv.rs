//! Cross-validate both classifiers on hand-made feature vectors.
//!
//!     cargo run --example classify_cv

use edt_texture::classify::{cross_validate, stratified_kfold, ClassifierKind, FeatureMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> edt_texture::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let noise = Normal::new(0.0, 1.0).expect("valid std");
    // three overlapping Gaussian classes in 4-D; the last feature is pure noise
    let centers = [[0.0, 0.0, 0.0], [2.0, 1.0, 0.0], [0.0, 2.5, 1.5]];
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (class, c) in centers.iter().enumerate() {
        for _ in 0..60 {
            let mut row: Vec<f64> = c.iter().map(|m| m + noise.sample(&mut rng)).collect();
            row.push(1000.0 * noise.sample(&mut rng));
            rows.push(row);
            labels.push(class);
        }
    }
    let m = FeatureMatrix::from_rows(&rows, labels.clone())?;

    let folds = stratified_kfold(&labels, 10, 42)?;
    println!("fold sizes: {:?}", folds.iter().map(Vec::len).collect::<Vec<_>>());
    for kind in [ClassifierKind::Knn1, ClassifierKind::Gnb] {
        let report = cross_validate(&m, kind, 10, 42)?;
        println!(
            "{kind}: {:.2} ({:.2})  per fold {:?}",
            report.mean_percent(),
            report.std_percent(),
            report
                .fold_accuracies
                .iter()
                .map(|a| (a * 100.0).round())
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
