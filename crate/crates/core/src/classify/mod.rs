//! Classifiers and cross-validation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

mod cv;
mod gnb;
mod knn;
mod scaling;

pub use cv::{cross_validate, stratified_kfold, CvReport};
pub use gnb::{gnb_fit, gnb_predict, GnbModel};
pub use knn::knn1_predict;
pub use scaling::{zscore_fit_apply, ZScore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    /// 1-nearest neighbor, Euclidean distance.
    Knn1,
    /// Gaussian naive Bayes.
    Gnb,
}

impl ClassifierKind {
    pub const fn name(self) -> &'static str {
        match self {
            ClassifierKind::Knn1 => "knn",
            ClassifierKind::Gnb => "gnb",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "knn" | "knn1" | "1nn" => Ok(ClassifierKind::Knn1),
            "gnb" | "nb" | "bayes" | "naive-bayes" => Ok(ClassifierKind::Gnb),
            _ => Err(format!("unknown classifier '{s}' (expected knn or gnb)")),
        }
    }
}

/// Row-major sample matrix with one class label per row.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    labels: Vec<usize>,
}

impl FeatureMatrix {
    pub fn new(cols: usize, data: Vec<f64>, labels: Vec<usize>) -> Result<Self> {
        let rows = labels.len();
        if data.len() != rows * cols {
            return Err(Error::Classifier(format!(
                "{rows} rows x {cols} columns needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Classifier("feature matrix contains non-finite values".into()));
        }
        Ok(FeatureMatrix {
            rows,
            cols,
            data,
            labels,
        })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], labels: Vec<usize>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::Classifier(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(r) = rows.iter().find(|r| r.as_ref().len() != cols) {
            return Err(Error::Classifier(format!(
                "ragged rows: expected {cols} columns, found {}",
                r.as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(cols, data, labels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Number of classes implied by the labels (`max + 1`).
    pub fn num_classes(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }

    /// Rows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        FeatureMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    pub(crate) fn with_data(&self, data: Vec<f64>) -> FeatureMatrix {
        debug_assert_eq!(data.len(), self.data.len());
        FeatureMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            labels: self.labels.clone(),
        }
    }
}
