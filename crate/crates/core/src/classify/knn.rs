use super::FeatureMatrix;
use crate::error::{Error, Result};

/// Label of the training row closest to `query` in Euclidean distance.
/// Ties go to the lowest row index.
pub fn knn1_predict(train: &FeatureMatrix, query: &[f64]) -> Result<usize> {
    if train.rows() == 0 {
        return Err(Error::Classifier("1-NN needs a non-empty training set".into()));
    }
    if query.len() != train.cols() {
        return Err(Error::Classifier(format!(
            "query has {} features, training rows have {}",
            query.len(),
            train.cols()
        )));
    }
    let mut best = (f64::INFINITY, 0);
    for r in 0..train.rows() {
        let d: f64 = train.row(r).iter().zip(query).map(|(a, b)| (a - b) * (a - b)).sum();
        if d < best.0 {
            best = (d, r);
        }
    }
    Ok(train.labels()[best.1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_match() {
        let train = FeatureMatrix::from_rows(&[[0.0, 0.0], [5.0, 5.0], [1.0, 9.0]], vec![2, 0, 1]).unwrap();
        assert_eq!(knn1_predict(&train, &[1.0, 9.0]).unwrap(), 1);
        assert_eq!(knn1_predict(&train, &[4.0, 4.0]).unwrap(), 0);
    }

    #[test]
    fn tie_goes_to_lowest_index() {
        let train = FeatureMatrix::from_rows(&[[1.0], [-1.0]], vec![1, 0]).unwrap();
        assert_eq!(knn1_predict(&train, &[0.0]).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let empty = FeatureMatrix::new(2, vec![], vec![]).unwrap();
        assert!(knn1_predict(&empty, &[0.0, 0.0]).is_err());
        let train = FeatureMatrix::from_rows(&[[1.0]], vec![0]).unwrap();
        assert!(knn1_predict(&train, &[0.0, 1.0]).is_err());
    }
}
