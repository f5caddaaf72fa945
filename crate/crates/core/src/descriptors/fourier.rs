use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::{DescriptorId, FeatureVector};
use crate::error::Result;
use crate::imageio::GrayImage;

/// Disk radii and wedge boundaries of the centered spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPartition {
    /// Disk radii as fractions of the maximum radius, increasing, last = 1.
    pub radii: [f64; 4],
    /// Wedge boundaries `θ_1..θ_8`, `θ_{j+1} - θ_j = 2π/7`, covering `[0, 2π)`.
    pub angles: [f64; 8],
}

impl Default for SpectrumPartition {
    fn default() -> Self {
        SpectrumPartition {
            radii: [0.25, 0.5, 0.75, 1.0],
            angles: std::array::from_fn(|j| j as f64 * TAU / 7.0),
        }
    }
}

impl SpectrumPartition {
    pub const WEDGES: usize = 7;

    /// Wedge index (0..7) containing `angle` in `[0, 2π)`.
    fn wedge(&self, angle: f64) -> usize {
        let step = self.angles[1] - self.angles[0];
        ((angle / step).floor() as usize).min(Self::WEDGES - 1)
    }
}

/// In-place 2-D DFT of a row-major `width x height` buffer (unnormalized
/// in both directions).
pub(crate) fn fft2(planner: &mut FftPlanner<f64>, data: &mut [Complex64], width: usize, height: usize, inverse: bool) {
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(width), planner.plan_fft_inverse(height))
    } else {
        (planner.plan_fft_forward(width), planner.plan_fft_forward(height))
    };
    row_fft.process(data);
    let mut columns = vec![Complex64::default(); width * height];
    transpose(data, &mut columns, width, height);
    col_fft.process(&mut columns);
    transpose(&columns, data, height, width);
}

/// `dst[x * height + y] = src[y * width + x]`.
fn transpose(src: &[Complex64], dst: &mut [Complex64], width: usize, height: usize) {
    for (y, row) in src.chunks_exact(width).enumerate() {
        for (x, &v) in row.iter().enumerate() {
            dst[x * height + y] = v;
        }
    }
}

/// Unnormalized 2-D DFT power `|F(u, v)|^2`, row-major in unshifted
/// frequency order. The DC term is kept.
pub fn power_spectrum(img: &GrayImage) -> Vec<f64> {
    let mut data: Vec<Complex64> = img.pixels().iter().map(|&v| Complex64::new(v as f64, 0.0)).collect();
    fft2(&mut FftPlanner::new(), &mut data, img.width(), img.height(), false);
    data.iter().map(|c| c.norm_sqr()).collect()
}

/// Signed offset of frequency index `k` from the center of a shifted axis
/// of length `n` (the center sits at index `n / 2`).
#[inline]
fn centered(k: usize, n: usize) -> i64 {
    ((k + n / 2) % n) as i64 - (n / 2) as i64
}

/// Sector and disk energies of the centered power spectrum.
///
/// With `R = min(width, height) / 2`, disk `i` has radius `radii[i] * R`.
/// The first 28 values are sector energies (disk-major, wedge-minor); the
/// last 4 are whole-disk energies. Disks are cumulative from the origin, so
/// the seven sectors of a disk sum to that disk's energy. Everything is
/// divided by the total spectral energy.
pub fn fourier_features(img: &GrayImage) -> Result<FeatureVector> {
    let partition = SpectrumPartition::default();
    let (w, h) = (img.width(), img.height());
    let power = power_spectrum(img);
    let total: f64 = power.iter().sum();
    let mut values = vec![0.0; 32];
    if total == 0.0 {
        return Ok(FeatureVector::new(DescriptorId::Fourier, values));
    }

    let max_radius = w.min(h) as f64 / 2.0;
    let limits: [f64; 4] = partition.radii.map(|f| (f * max_radius).powi(2) + 1e-9);
    let mut sectors = [[0.0f64; 7]; 4];
    let mut disks = [0.0f64; 4];
    for v in 0..h {
        let fy = centered(v, h);
        for u in 0..w {
            let fx = centered(u, w);
            let r2 = (fx * fx + fy * fy) as f64;
            if r2 > limits[3] {
                continue;
            }
            // counter-clockwise with the vertical axis pointing up
            let angle = (-fy as f64).atan2(fx as f64).rem_euclid(TAU);
            let wedge = partition.wedge(angle);
            let p = power[v * w + u];
            for (disk, &limit) in limits.iter().enumerate() {
                if r2 <= limit {
                    sectors[disk][wedge] += p;
                    disks[disk] += p;
                }
            }
        }
    }
    for (disk, row) in sectors.iter().enumerate() {
        for (wedge, &e) in row.iter().enumerate() {
            values[disk * 7 + wedge] = e / total;
        }
        values[28 + disk] = disks[disk] / total;
    }
    Ok(FeatureVector::new(DescriptorId::Fourier, values))
}
