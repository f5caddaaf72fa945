//! Experiment orchestration: feature extraction, the threshold sweep,
//! synthetic datasets and CSV reports.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::descriptors::{
    fourier_features, gabor_features, glcm_features_with_levels, gldm_features, lbp, lbpv, DescriptorId,
    DescriptorParams, FeatureVector, GaborBank,
};
use crate::error::Result;
use crate::imageio::GrayImage;
use crate::transform::distance_image;

mod report;
mod sweep;
mod synth;

pub use report::{format_percent, render_curve, render_report, write_curve, write_report};
pub use sweep::{run_sweep, SweepConfig, SweepResult};
pub use synth::{default_palette, generate_synthetic, SynthSpec, TextureKind};

/// Which feature set each sweep iteration classifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepMode {
    /// Original-image features only; no sweep.
    Baseline,
    /// Distance-image features only. Not part of the original protocol; useful
    /// for attributing gains.
    EdtOnly,
    /// Original features followed by distance-image features.
    Combined,
}

impl SweepMode {
    pub const fn name(self) -> &'static str {
        match self {
            SweepMode::Baseline => "baseline",
            SweepMode::EdtOnly => "edt_only",
            SweepMode::Combined => "combined",
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "baseline" => Ok(SweepMode::Baseline),
            "edt_only" | "edt" => Ok(SweepMode::EdtOnly),
            "combined" => Ok(SweepMode::Combined),
            _ => Err(format!("unknown mode '{s}' (expected baseline, edt-only or combined)")),
        }
    }
}

/// A descriptor bound to its parameters. Cheap to clone; the Gabor bank is
/// built once and shared.
#[derive(Clone, Debug)]
pub struct FeatureExtractor {
    descriptor: DescriptorId,
    params: DescriptorParams,
    bank: Option<Arc<GaborBank>>,
}

impl FeatureExtractor {
    pub fn new(descriptor: DescriptorId, params: DescriptorParams) -> Result<Self> {
        let bank = match descriptor {
            DescriptorId::Gabor if params.gabor == Default::default() => Some(default_bank()),
            DescriptorId::Gabor => Some(Arc::new(GaborBank::new(params.gabor)?)),
            _ => None,
        };
        Ok(FeatureExtractor {
            descriptor,
            params,
            bank,
        })
    }

    pub fn descriptor(&self) -> DescriptorId {
        self.descriptor
    }

    pub fn params(&self) -> &DescriptorParams {
        &self.params
    }

    pub fn extract(&self, img: &GrayImage) -> Result<FeatureVector> {
        match self.descriptor {
            DescriptorId::Lbp => lbp(img),
            DescriptorId::Lbpv => lbpv(img),
            DescriptorId::Glcm => glcm_features_with_levels(img, self.params.glcm_levels),
            DescriptorId::Gldm => gldm_features(img),
            DescriptorId::Fourier => fourier_features(img),
            DescriptorId::Gabor => gabor_features(img, self.bank.as_ref().expect("bank built for Gabor")),
        }
    }

    /// Features of the distance image at `threshold`.
    pub fn extract_distance(&self, img: &GrayImage, threshold: u8) -> Result<FeatureVector> {
        self.extract(&distance_image(img, threshold))
    }

    /// `[features(img) ‖ features(distance image at threshold)]`.
    pub fn combined(&self, img: &GrayImage, threshold: u8) -> Result<FeatureVector> {
        Ok(self.extract(img)?.concat(&self.extract_distance(img, threshold)?))
    }
}

fn default_bank() -> Arc<GaborBank> {
    static BANK: OnceLock<Arc<GaborBank>> = OnceLock::new();
    BANK.get_or_init(|| Arc::new(GaborBank::with_default_params())).clone()
}

/// Features of `img` with default descriptor parameters.
pub fn extract_features(img: &GrayImage, descriptor: DescriptorId) -> Result<FeatureVector> {
    FeatureExtractor::new(descriptor, DescriptorParams::default())?.extract(img)
}

/// Original-image features followed by the features of its distance image
/// at `threshold`, default parameters.
pub fn combined_vector(img: &GrayImage, threshold: u8, descriptor: DescriptorId) -> Result<FeatureVector> {
    FeatureExtractor::new(descriptor, DescriptorParams::default())?.combined(img, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(size: usize, seed: u64) -> GrayImage {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GrayImage::from_fn(size, size, |_, _| rng.random()).unwrap()
    }

    #[test]
    fn constant_image_features() {
        let img = GrayImage::filled(40, 40, 120).unwrap();
        assert_eq!(extract_features(&img, DescriptorId::Lbp).unwrap().values()[255], 1.0);
        let gabor = extract_features(&img, DescriptorId::Gabor).unwrap();
        assert!(gabor.values().iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn lengths() {
        let img = random_image(40, 1);
        for d in DescriptorId::ALL {
            assert_eq!(extract_features(&img, d).unwrap().len(), d.len());
            let c = combined_vector(&img, 128, d).unwrap();
            assert_eq!(c.len(), 2 * d.len());
            assert_eq!(c.blocks(), 2);
        }
    }

    #[test]
    fn combined_layout() {
        let img = random_image(32, 2);
        let original = extract_features(&img, DescriptorId::Lbp).unwrap();
        let c = combined_vector(&img, 128, DescriptorId::Lbp).unwrap();
        assert_eq!(&c.values()[..256], original.values());

        // threshold above the maximum: full foreground, zero distance image
        let zero = extract_features(&GrayImage::filled(32, 32, 0).unwrap(), DescriptorId::Lbp).unwrap();
        let c = combined_vector(&img, 255, DescriptorId::Lbp).unwrap();
        assert_eq!(&c.values()[256..], zero.values());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [SweepMode::Baseline, SweepMode::EdtOnly, SweepMode::Combined] {
            assert_eq!(m.name().parse::<SweepMode>().unwrap(), m);
        }
        assert_eq!("edt-only".parse::<SweepMode>().unwrap(), SweepMode::EdtOnly);
        assert!("both".parse::<SweepMode>().is_err());
    }
}
