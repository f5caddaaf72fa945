use std::f64::consts::PI;

use super::FeatureMatrix;
use crate::error::{Error, Result};

const VAR_SMOOTHING: f64 = 1e-9;

/// Per-class Gaussian feature model.
#[derive(Clone, Debug, PartialEq)]
pub struct GnbModel {
    cols: usize,
    /// `None` for classes absent from the training data.
    classes: Vec<Option<ClassStats>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassStats {
    pub log_prior: f64,
    pub mean: Vec<f64>,
    /// Population variance plus smoothing.
    pub var: Vec<f64>,
}

impl GnbModel {
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn class(&self, c: usize) -> Option<&ClassStats> {
        self.classes.get(c).and_then(Option::as_ref)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Joint log-density `log P(c) + Σ log N(x_f; μ_cf, σ²_cf)` for every
    /// class; absent classes get negative infinity.
    pub fn log_posteriors(&self, query: &[f64]) -> Result<Vec<f64>> {
        if query.len() != self.cols {
            return Err(Error::Classifier(format!(
                "query has {} features, model expects {}",
                query.len(),
                self.cols
            )));
        }
        Ok(self
            .classes
            .iter()
            .map(|stats| match stats {
                None => f64::NEG_INFINITY,
                Some(s) => {
                    let mut lp = s.log_prior;
                    for ((&x, &m), &v) in query.iter().zip(&s.mean).zip(&s.var) {
                        lp -= 0.5 * (2.0 * PI * v).ln() + (x - m) * (x - m) / (2.0 * v);
                    }
                    lp
                }
            })
            .collect())
    }
}

/// Fits class priors (class frequencies), means and population variances.
///
/// Every variance is increased by `1e-9` times the largest per-feature
/// variance of the whole training set (or by `1e-9` outright if every
/// feature is constant).
pub fn gnb_fit(train: &FeatureMatrix) -> Result<GnbModel> {
    let cols = train.cols();
    let num_classes = train.num_classes();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (r, &l) in train.labels().iter().enumerate() {
        members[l].push(r);
    }
    if let Some((c, m)) = members.iter().enumerate().find(|(_, m)| m.len() == 1) {
        return Err(Error::Classifier(format!(
            "naive Bayes needs at least 2 training samples per class, class {c} has {}",
            m.len()
        )));
    }

    let (_, global_var) = moments(train, &(0..train.rows()).collect::<Vec<_>>());
    let max_var = global_var.iter().copied().fold(0.0, f64::max);
    let epsilon = if max_var > 0.0 {
        VAR_SMOOTHING * max_var
    } else {
        VAR_SMOOTHING
    };

    let n = train.rows() as f64;
    let classes = members
        .iter()
        .map(|rows| {
            if rows.is_empty() {
                return None;
            }
            let (mean, var) = moments(train, rows);
            Some(ClassStats {
                log_prior: (rows.len() as f64 / n).ln(),
                mean,
                var: var.into_iter().map(|v| v + epsilon).collect(),
            })
        })
        .collect();
    Ok(GnbModel { cols, classes })
}

fn moments(m: &FeatureMatrix, rows: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let cols = m.cols();
    let n = rows.len() as f64;
    let mut mean = vec![0.0; cols];
    for &r in rows {
        for (acc, &v) in mean.iter_mut().zip(m.row(r)) {
            *acc += v;
        }
    }
    mean.iter_mut().for_each(|v| *v /= n);
    let mut var = vec![0.0; cols];
    for &r in rows {
        for ((acc, &v), &mu) in var.iter_mut().zip(m.row(r)).zip(&mean) {
            *acc += (v - mu) * (v - mu);
        }
    }
    var.iter_mut().for_each(|v| *v /= n);
    (mean, var)
}

/// Class maximizing the joint log-density; ties go to the lowest class index.
pub fn gnb_predict(model: &GnbModel, query: &[f64]) -> Result<usize> {
    let scores = model.log_posteriors(query)?;
    let mut best = 0;
    for (c, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = c;
        }
    }
    Ok(best)
}
