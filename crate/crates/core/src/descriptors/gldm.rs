use super::{DescriptorId, FeatureVector};
use crate::error::{Error, Result};
use crate::imageio::GrayImage;

/// `(dx, dy)` offsets of the difference images.
pub const GLDM_DISPLACEMENTS: [(usize, usize); 3] = [(1, 1), (2, 2), (5, 5)];

/// Gray-level difference statistics.
///
/// For each displacement the absolute differences `|f(x,y) - f(x+dx, y+dy)|`
/// over the valid overlap form a probability histogram `p` on `0..=255`, from
/// which `[mean, contrast, angular second moment, entropy]` are emitted.
pub fn gldm_features(img: &GrayImage) -> Result<FeatureVector> {
    let (w, h) = (img.width(), img.height());
    if w <= 5 || h <= 5 {
        return Err(Error::ImageTooSmall {
            descriptor: "gldm",
            width: w,
            height: h,
            min_width: 6,
            min_height: 6,
        });
    }
    let mut values = Vec::with_capacity(12);
    for (dx, dy) in GLDM_DISPLACEMENTS {
        let mut hist = [0u64; 256];
        for y in 0..h - dy {
            for x in 0..w - dx {
                hist[img.get(x, y).abs_diff(img.get(x + dx, y + dy)) as usize] += 1;
            }
        }
        let n = ((w - dx) * (h - dy)) as f64;
        let (mut mean, mut contrast, mut asm, mut entropy) = (0.0, 0.0, 0.0, 0.0);
        for (g, &count) in hist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let p = count as f64 / n;
            let g = g as f64;
            mean += g * p;
            contrast += g * g * p;
            asm += p * p;
            entropy -= p * p.ln();
        }
        values.extend_from_slice(&[mean, contrast, asm, entropy.max(0.0)]);
    }
    Ok(FeatureVector::new(DescriptorId::Gldm, values))
}
