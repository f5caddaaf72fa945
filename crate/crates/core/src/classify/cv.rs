use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{gnb_fit, gnb_predict, knn1_predict, zscore_fit_apply, ClassifierKind, FeatureMatrix};
use crate::error::{Error, Result};

/// Per-fold accuracies with their mean and sample standard deviation.
///
/// Values are fractions in `[0, 1]`; use [`CvReport::mean_percent`] and
/// [`CvReport::std_percent`] for the usual `72.50 (2.48)` presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct CvReport {
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

impl CvReport {
    pub fn from_folds(fold_accuracies: Vec<f64>) -> Self {
        let k = fold_accuracies.len() as f64;
        let mean = fold_accuracies.iter().sum::<f64>() / k;
        let std = if fold_accuracies.len() > 1 {
            (fold_accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        CvReport {
            fold_accuracies,
            mean,
            std,
        }
    }

    pub fn mean_percent(&self) -> f64 {
        self.mean * 100.0
    }

    pub fn std_percent(&self) -> f64 {
        self.std * 100.0
    }
}

/// Splits sample indices into `k` stratified folds.
///
/// Each class's indices are shuffled (seeded) and dealt round-robin; the
/// dealing position carries over from one class to the next so fold sizes
/// stay balanced. Per class, fold counts differ by at most one. Classes with
/// fewer than `k` samples simply do not appear in every fold.
pub fn stratified_kfold(labels: &[usize], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::Config(format!("folds must be >= 2, got {k}")));
    }
    if labels.len() < k {
        return Err(Error::Config(format!("{} samples cannot fill {k} folds", labels.len())));
    }
    let num_classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    if let Some((c, members)) = by_class.iter().enumerate().find(|(_, m)| m.len() == 1) {
        return Err(Error::Dataset(format!(
            "class {c} has {} sample, at least 2 required for cross-validation",
            members.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for members in by_class.iter_mut() {
        members.shuffle(&mut rng);
        for &i in members.iter() {
            folds[next].push(i);
            next = (next + 1) % k;
        }
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(folds)
}

/// Stratified k-fold accuracy of `classifier` on `features`.
///
/// For each fold, features are z-scored with statistics from the other
/// `k - 1` folds, the classifier is trained on those folds and evaluated on
/// the held-out one. Folds run in parallel; results are collected by fold
/// index so the report does not depend on scheduling.
pub fn cross_validate(features: &FeatureMatrix, classifier: ClassifierKind, k: usize, seed: u64) -> Result<CvReport> {
    let folds = stratified_kfold(features.labels(), k, seed)?;
    let n = features.rows();
    let accuracies = folds
        .par_iter()
        .map(|test_idx| {
            let mut held_out = vec![false; n];
            test_idx.iter().for_each(|&i| held_out[i] = true);
            let train_idx: Vec<usize> = (0..n).filter(|&i| !held_out[i]).collect();
            let (train, test) = zscore_fit_apply(&features.select(&train_idx), &features.select(test_idx))?;
            let model = match classifier {
                ClassifierKind::Knn1 => None,
                ClassifierKind::Gnb => Some(gnb_fit(&train)?),
            };
            let predict = |q: &[f64]| match &model {
                None => knn1_predict(&train, q),
                Some(m) => gnb_predict(m, q),
            };
            let mut correct = 0;
            for r in 0..test.rows() {
                if predict(test.row(r))? == test.labels()[r] {
                    correct += 1;
                }
            }
            Ok(correct as f64 / test.rows() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CvReport::from_folds(accuracies))
}
