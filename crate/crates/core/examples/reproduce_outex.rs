//! Runs every descriptor/classifier pair on an Outex copy laid out as one
//! directory per class and prints the measured accuracies next to the
//! published reference values.
//!
//!     cargo run --release --example reproduce_outex -- /data/outex [descriptor ...]
//!
//! The published numbers come from an unspecified implementation, so
//! differences are expected. Each row reports whether the distance image
//! helped; nothing is asserted.

use edt_texture::classify::ClassifierKind;
use edt_texture::descriptors::DescriptorId;
use edt_texture::harness::{run_sweep, SweepConfig, SweepMode};
use edt_texture::imageio::load_dataset;
use log::{info, warn};

/// (descriptor, classifier, baseline mean, baseline std, combined mean, combined std, best i)
const REFERENCE: [(DescriptorId, ClassifierKind, f64, f64, f64, f64, u8); 12] = [
    (DescriptorId::Lbp, ClassifierKind::Knn1, 72.50, 2.48, 79.63, 2.58, 57),
    (DescriptorId::Lbp, ClassifierKind::Gnb, 80.81, 3.47, 83.24, 3.78, 67),
    (DescriptorId::Lbpv, ClassifierKind::Knn1, 75.59, 4.20, 78.46, 3.80, 51),
    (DescriptorId::Lbpv, ClassifierKind::Gnb, 59.26, 4.13, 69.56, 3.75, 58),
    (DescriptorId::Glcm, ClassifierKind::Knn1, 72.72, 5.19, 72.72, 5.19, 1),
    (DescriptorId::Glcm, ClassifierKind::Gnb, 62.35, 4.63, 73.09, 2.85, 58),
    (DescriptorId::Gldm, ClassifierKind::Knn1, 74.04, 3.72, 79.85, 2.10, 57),
    (DescriptorId::Gldm, ClassifierKind::Gnb, 59.19, 4.72, 72.72, 3.63, 6),
    (
        DescriptorId::Fourier,
        ClassifierKind::Knn1,
        68.75,
        2.76,
        72.65,
        3.29,
        69,
    ),
    (DescriptorId::Fourier, ClassifierKind::Gnb, 56.62, 3.70, 65.74, 2.92, 56),
    (DescriptorId::Gabor, ClassifierKind::Knn1, 72.06, 2.11, 78.09, 3.75, 51),
    (DescriptorId::Gabor, ClassifierKind::Gnb, 65.22, 2.48, 75.37, 3.40, 56),
];

fn main() -> edt_texture::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut args = std::env::args().skip(1);
    let Some(root) = args.next() else {
        eprintln!("usage: reproduce_outex <outex-root> [descriptor ...]");
        std::process::exit(2);
    };
    let only: Vec<DescriptorId> = args
        .map(|s| s.parse().map_err(edt_texture::Error::Config))
        .collect::<edt_texture::Result<_>>()?;

    let dataset = load_dataset(&root)?;
    info!("{} images in {} classes", dataset.len(), dataset.num_classes());
    if dataset.len() != 1360 || dataset.num_classes() != 68 {
        warn!("the reference set has 1360 images in 68 classes; numbers will not be comparable");
    }

    println!("descriptor,classifier,ref_baseline,baseline,ref_combined,combined,ref_best_i,best_i,direction");
    for (d, c, ref_base, ref_base_std, ref_comb, ref_comb_std, ref_i) in REFERENCE {
        if !only.is_empty() && !only.contains(&d) {
            continue;
        }
        let config = SweepConfig {
            descriptor: d,
            classifier: c,
            mode: SweepMode::Combined,
            ..SweepConfig::default()
        };
        let result = run_sweep(&dataset, &config)?;
        let (best_i, best) = result.best().expect("combined sweep has iterations");
        let direction = if best.mean >= result.baseline.mean {
            "combined >= baseline"
        } else {
            "combined < baseline"
        };
        if d == DescriptorId::Lbp && c == ClassifierKind::Knn1 && best.mean < result.baseline.mean {
            warn!("expected the combined LBP/KNN features to match or beat the baseline");
        }
        println!(
            "{d},{c},{ref_base:.2} ({ref_base_std:.2}),{:.2} ({:.2}),{ref_comb:.2} ({ref_comb_std:.2}),{:.2} ({:.2}),{ref_i},{best_i},{direction}",
            result.baseline.mean_percent(),
            result.baseline.std_percent(),
            best.mean_percent(),
            best.std_percent(),
        );
    }
    Ok(())
}
