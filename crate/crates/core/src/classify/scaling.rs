use super::FeatureMatrix;
use crate::error::{Error, Result};

const EPS: f64 = 1e-12;

/// Per-column standardization fitted on training rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ZScore {
    pub mean: Vec<f64>,
    /// Population standard deviation.
    pub std: Vec<f64>,
}

impl ZScore {
    pub fn fit(train: &FeatureMatrix) -> Result<Self> {
        if train.rows() < 2 {
            return Err(Error::Classifier(format!(
                "z-score needs at least 2 training rows, got {}",
                train.rows()
            )));
        }
        let n = train.rows() as f64;
        let cols = train.cols();
        let mut mean = vec![0.0; cols];
        for r in 0..train.rows() {
            for (m, &v) in mean.iter_mut().zip(train.row(r)) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; cols];
        for r in 0..train.rows() {
            for ((s, &v), &m) in var.iter_mut().zip(train.row(r)).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var.into_iter().map(|s| (s / n).sqrt()).collect();
        Ok(ZScore { mean, std })
    }

    /// `(x - mean) / (std + 1e-12)`; zero-variance columns map to 0.
    pub fn apply(&self, m: &FeatureMatrix) -> Result<FeatureMatrix> {
        if m.cols() != self.mean.len() {
            return Err(Error::Classifier(format!(
                "column mismatch: scaler fitted on {} columns, got {}",
                self.mean.len(),
                m.cols()
            )));
        }
        let cols = m.cols();
        let data = m
            .data()
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let c = i % cols;
                if self.std[c] == 0.0 {
                    0.0
                } else {
                    (v - self.mean[c]) / (self.std[c] + EPS)
                }
            })
            .collect();
        Ok(m.with_data(data))
    }
}

/// Fits on `train` only and transforms both matrices.
pub fn zscore_fit_apply(train: &FeatureMatrix, test: &FeatureMatrix) -> Result<(FeatureMatrix, FeatureMatrix)> {
    if train.cols() != test.cols() {
        return Err(Error::Classifier(format!(
            "column mismatch: train has {}, test has {}",
            train.cols(),
            test.cols()
        )));
    }
    let scaler = ZScore::fit(train)?;
    Ok((scaler.apply(train)?, scaler.apply(test)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(values: &[f64]) -> FeatureMatrix {
        FeatureMatrix::new(1, values.to_vec(), vec![0; values.len()]).unwrap()
    }

    #[test]
    fn two_point_column() {
        let (tr, te) = zscore_fit_apply(&column(&[1.0, 3.0]), &column(&[5.0, -1.0])).unwrap();
        assert!((tr.data()[0] + 1.0).abs() < 1e-9);
        assert!((tr.data()[1] - 1.0).abs() < 1e-9);
        // same affine map outside the training range, no clamping
        assert!((te.data()[0] - 3.0).abs() < 1e-9);
        assert!((te.data()[1] + 3.0).abs() < 1e-9);
    }

    #[test]
    fn constant_column_goes_to_zero() {
        let (tr, te) = zscore_fit_apply(&column(&[4.0, 4.0, 4.0]), &column(&[9.0])).unwrap();
        assert!(tr.data().iter().all(|&v| v == 0.0));
        assert_eq!(te.data(), &[0.0]);
    }

    #[test]
    fn unit_moments_after_fit() {
        let train = FeatureMatrix::new(2, vec![1.0, 10.0, 2.0, 30.0, 7.0, 20.0, 4.0, 0.5], vec![0; 4]).unwrap();
        let (tr, _) = zscore_fit_apply(&train, &train).unwrap();
        for c in 0..2 {
            let col: Vec<f64> = (0..4).map(|r| tr.row(r)[c]).collect();
            let mean = col.iter().sum::<f64>() / 4.0;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 4.0;
            assert!(mean.abs() < 1e-12);
            assert!((var - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn errors() {
        let two = FeatureMatrix::new(2, vec![0.0; 4], vec![0, 0]).unwrap();
        assert!(zscore_fit_apply(&two, &column(&[1.0])).is_err());
        assert!(zscore_fit_apply(&column(&[1.0]), &column(&[1.0])).is_err());
    }
}
