use log::info;
use rayon::prelude::*;

use super::{FeatureExtractor, SweepMode};
use crate::classify::{cross_validate, ClassifierKind, CvReport, FeatureMatrix};
use crate::descriptors::{DescriptorId, DescriptorParams, FeatureVector};
use crate::error::{Error, Result};
use crate::imageio::LabeledDataset;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub descriptor: DescriptorId,
    pub classifier: ClassifierKind,
    pub mode: SweepMode,
    pub i_min: u8,
    pub i_max: u8,
    pub folds: usize,
    pub seed: u64,
    pub params: DescriptorParams,
    /// Reuse original-image features across iterations. Turning this off
    /// only costs time.
    pub cache_original: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            descriptor: DescriptorId::Lbp,
            classifier: ClassifierKind::Knn1,
            mode: SweepMode::Combined,
            i_min: 1,
            i_max: 150,
            folds: 10,
            seed: 42,
            params: DescriptorParams::default(),
            cache_original: true,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.i_min > self.i_max {
            return Err(Error::Config(format!(
                "i_min ({}) must not exceed i_max ({})",
                self.i_min, self.i_max
            )));
        }
        if self.folds < 2 {
            return Err(Error::Config(format!("folds must be >= 2, got {}", self.folds)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub descriptor: DescriptorId,
    pub classifier: ClassifierKind,
    pub mode: SweepMode,
    /// Original-image features only.
    pub baseline: CvReport,
    /// One report per threshold, ascending; empty in baseline mode.
    pub per_iteration: Vec<(u8, CvReport)>,
    /// Threshold with the highest mean accuracy (smallest on ties).
    pub best_i: Option<u8>,
}

impl SweepResult {
    pub fn best(&self) -> Option<&(u8, CvReport)> {
        let best = self.best_i?;
        self.per_iteration.iter().find(|(i, _)| *i == best)
    }
}

fn matrix(rows: &[FeatureVector], labels: &[usize]) -> Result<FeatureMatrix> {
    let rows: Vec<&[f64]> = rows.iter().map(FeatureVector::values).collect();
    FeatureMatrix::from_rows(&rows, labels.to_vec())
}

/// Runs the baseline evaluation and, unless `config.mode` is
/// [`SweepMode::Baseline`], one cross-validation per threshold in
/// `config.i_min..=config.i_max`.
///
/// Every image is binarized at the threshold, distance-transformed and
/// quantized; the descriptor of that distance image is used alone
/// ([`SweepMode::EdtOnly`]) or appended to the original image's descriptor
/// ([`SweepMode::Combined`]). All folds use the same seed, so thresholds are
/// compared on identical splits.
pub fn run_sweep(dataset: &LabeledDataset, config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(Error::Dataset("dataset is empty".into()));
    }
    dataset.require_min_per_class(2)?;
    let extractor = FeatureExtractor::new(config.descriptor, config.params)?;
    let labels = &dataset.labels;

    let original: Vec<FeatureVector> = dataset
        .images
        .par_iter()
        .map(|img| extractor.extract(img))
        .collect::<Result<_>>()?;
    let baseline = cross_validate(
        &matrix(&original, labels)?,
        config.classifier,
        config.folds,
        config.seed,
    )?;
    info!(
        "{} {} baseline: {:.2} ({:.2})",
        config.descriptor,
        config.classifier,
        baseline.mean_percent(),
        baseline.std_percent()
    );
    if config.mode == SweepMode::Baseline {
        return Ok(SweepResult {
            descriptor: config.descriptor,
            classifier: config.classifier,
            mode: config.mode,
            baseline,
            per_iteration: Vec::new(),
            best_i: None,
        });
    }

    let per_iteration: Vec<(u8, CvReport)> = (config.i_min..=config.i_max)
        .into_par_iter()
        .map(|i| {
            let rows: Vec<FeatureVector> = dataset
                .images
                .par_iter()
                .enumerate()
                .map(|(k, img)| {
                    let edt = extractor.extract_distance(img, i)?;
                    match config.mode {
                        SweepMode::EdtOnly => Ok(edt),
                        _ if config.cache_original => Ok(original[k].concat(&edt)),
                        _ => Ok(extractor.extract(img)?.concat(&edt)),
                    }
                })
                .collect::<Result<_>>()?;
            let report = cross_validate(&matrix(&rows, labels)?, config.classifier, config.folds, config.seed)?;
            Ok((i, report))
        })
        .collect::<Result<_>>()?;

    let mut best: Option<&(u8, CvReport)> = None;
    for entry in &per_iteration {
        info!(
            "i={:3} acc={:.2} ({:.2})",
            entry.0,
            entry.1.mean_percent(),
            entry.1.std_percent()
        );
        if best.is_none_or(|b| entry.1.mean > b.1.mean) {
            best = Some(entry);
        }
    }
    let best_i = best.map(|b| b.0);
    Ok(SweepResult {
        descriptor: config.descriptor,
        classifier: config.classifier,
        mode: config.mode,
        baseline,
        per_iteration,
        best_i,
    })
}
