use super::{DescriptorId, FeatureVector};
use crate::error::{Error, Result};
use crate::imageio::GrayImage;

pub const DEFAULT_GLCM_LEVELS: usize = 32;

/// The 12 displacement classes of `{0, ±1, ±2}^2 \ {(0,0)}` modulo `d ~ -d`,
/// each represented by the member with `dx > 0` or `dx == 0, dy > 0`, in
/// lexicographic order.
pub fn glcm_displacements() -> Vec<(isize, isize)> {
    let mut out = Vec::with_capacity(12);
    for dx in -2..=2isize {
        for dy in -2..=2isize {
            if dx > 0 || (dx == 0 && dy > 0) {
                out.push((dx, dy));
            }
        }
    }
    out
}

/// GLCM features with the default 32 gray levels.
pub fn glcm_features(img: &GrayImage) -> Result<FeatureVector> {
    glcm_features_with_levels(img, DEFAULT_GLCM_LEVELS)
}

/// For each displacement in [`glcm_displacements`], builds the symmetric,
/// normalized co-occurrence matrix of intensities quantized to `levels`
/// bins and emits `[contrast, correlation, energy, homogeneity]`.
pub fn glcm_features_with_levels(img: &GrayImage, levels: usize) -> Result<FeatureVector> {
    if !(2..=256).contains(&levels) {
        return Err(Error::Config(format!("GLCM levels must be in 2..=256, got {levels}")));
    }
    if img.width() < 3 || img.height() < 3 {
        return Err(Error::ImageTooSmall {
            descriptor: "glcm",
            width: img.width(),
            height: img.height(),
            min_width: 3,
            min_height: 3,
        });
    }
    let quantized: Vec<usize> = img.pixels().iter().map(|&v| v as usize * levels / 256).collect();
    let mut values = Vec::with_capacity(48);
    let mut counts = vec![0u64; levels * levels];
    for (dx, dy) in glcm_displacements() {
        counts.iter_mut().for_each(|c| *c = 0);
        cooccurrence(&quantized, img.width(), img.height(), dx, dy, levels, &mut counts);
        values.extend_from_slice(&haralick(&counts, levels));
    }
    Ok(FeatureVector::new(DescriptorId::Glcm, values))
}

fn cooccurrence(q: &[usize], w: usize, h: usize, dx: isize, dy: isize, levels: usize, counts: &mut [u64]) {
    let xs = (0isize.max(-dx) as usize)..((w as isize).min(w as isize - dx) as usize);
    let ys = (0isize.max(-dy) as usize)..((h as isize).min(h as isize - dy) as usize);
    for y in ys {
        let y2 = (y as isize + dy) as usize;
        for x in xs.clone() {
            let x2 = (x as isize + dx) as usize;
            let (a, b) = (q[y * w + x], q[y2 * w + x2]);
            counts[a * levels + b] += 1;
            counts[b * levels + a] += 1;
        }
    }
}

/// `[contrast, correlation, energy, homogeneity]` of a symmetric count matrix.
fn haralick(counts: &[u64], levels: usize) -> [f64; 4] {
    let total: u64 = counts.iter().sum();
    let total = total as f64;
    let mut marginal = vec![0f64; levels];
    let (mut contrast, mut energy, mut homogeneity) = (0.0, 0.0, 0.0);
    for a in 0..levels {
        for b in 0..levels {
            let c = counts[a * levels + b];
            if c == 0 {
                continue;
            }
            let p = c as f64 / total;
            let diff = a as f64 - b as f64;
            contrast += diff * diff * p;
            energy += p * p;
            homogeneity += p / (1.0 + diff.abs());
            marginal[a] += p;
        }
    }
    // symmetric matrix: row and column marginals coincide
    let mean: f64 = marginal.iter().enumerate().map(|(a, p)| a as f64 * p).sum();
    let var: f64 = marginal
        .iter()
        .enumerate()
        .map(|(a, p)| (a as f64 - mean).powi(2) * p)
        .sum();
    let correlation = if var > 0.0 {
        let mut cov = 0.0;
        for a in 0..levels {
            for b in 0..levels {
                let c = counts[a * levels + b];
                if c != 0 {
                    cov += (a as f64 - mean) * (b as f64 - mean) * (c as f64 / total);
                }
            }
        }
        (cov / var).clamp(-1.0, 1.0)
    } else {
        0.0
    };
    [contrast, correlation, energy, homogeneity]
}
