use super::{DescriptorId, FeatureVector};
use crate::error::{Error, Result};
use crate::imageio::GrayImage;

/// Neighbor offsets, counter-clockwise from east (y grows downward, so
/// "north" is `dy = -1`). Bit `k` of a code corresponds to `OFFSETS[k]`.
const OFFSETS: [(isize, isize); 8] = [(1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1)];

fn check_size(img: &GrayImage, descriptor: &'static str) -> Result<()> {
    if img.width() < 3 || img.height() < 3 {
        return Err(Error::ImageTooSmall {
            descriptor,
            width: img.width(),
            height: img.height(),
            min_width: 3,
            min_height: 3,
        });
    }
    Ok(())
}

#[inline]
fn neighbors(img: &GrayImage, x: usize, y: usize) -> [u8; 8] {
    OFFSETS.map(|(dx, dy)| img.get((x as isize + dx) as usize, (y as isize + dy) as usize))
}

/// 8-neighbor pattern at interior pixel `(x, y)`: bit `k` is set when
/// neighbor `k` is at least as bright as the center.
pub fn lbp_code(img: &GrayImage, x: usize, y: usize) -> u8 {
    debug_assert!(x >= 1 && y >= 1 && x + 1 < img.width() && y + 1 < img.height());
    let center = img.get(x, y);
    neighbors(img, x, y)
        .iter()
        .enumerate()
        .fold(0u8, |code, (k, &n)| code | (((n >= center) as u8) << k))
}

fn interior(img: &GrayImage) -> impl Iterator<Item = (usize, usize)> + '_ {
    (1..img.height() - 1).flat_map(move |y| (1..img.width() - 1).map(move |x| (x, y)))
}

/// Normalized 256-bin histogram of [`lbp_code`] over interior pixels.
pub fn lbp(img: &GrayImage) -> Result<FeatureVector> {
    check_size(img, "lbp")?;
    let mut counts = [0u64; 256];
    for (x, y) in interior(img) {
        counts[lbp_code(img, x, y) as usize] += 1;
    }
    let total = ((img.width() - 2) * (img.height() - 2)) as f64;
    Ok(FeatureVector::new(
        DescriptorId::Lbp,
        counts.iter().map(|&c| c as f64 / total).collect(),
    ))
}

/// Rotation-invariant uniform mapping: codes with at most two circular
/// 0/1 transitions map to their popcount (0..=8), all others to 9.
pub fn riu2_map(code: u8) -> usize {
    let transitions = (code ^ code.rotate_right(1)).count_ones();
    if transitions <= 2 {
        code.count_ones() as usize
    } else {
        9
    }
}

/// LBP variance histogram: each interior pixel adds the variance of its
/// eight neighbors to its riu2 bin. The result is divided by the total
/// accumulated variance (all zeros when that is zero).
pub fn lbpv(img: &GrayImage) -> Result<FeatureVector> {
    check_size(img, "lbpv")?;
    let mut bins = [0f64; 10];
    for (x, y) in interior(img) {
        let n = neighbors(img, x, y);
        let sum: i64 = n.iter().map(|&v| v as i64).sum();
        let sum_sq: i64 = n.iter().map(|&v| (v as i64).pow(2)).sum();
        // (8 * sum_sq - sum^2) / 64 is the population variance, exact in integers
        let var = (8 * sum_sq - sum * sum) as f64 / 64.0;
        bins[riu2_map(lbp_code(img, x, y))] += var;
    }
    let total: f64 = bins.iter().sum();
    if total > 0.0 {
        bins.iter_mut().for_each(|b| *b /= total);
    }
    Ok(FeatureVector::new(DescriptorId::Lbpv, bins.to_vec()))
}
