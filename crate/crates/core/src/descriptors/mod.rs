//! Texture descriptors.
//!
//! Every descriptor maps a [`GrayImage`](crate::GrayImage) to a
//! [`FeatureVector`] of fixed length:
//!
//! | descriptor | length | contents |
//! |---|---|---|
//! | LBP | 256 | normalized histogram of 3x3 binary patterns |
//! | LBPV | 10 | variance-weighted rotation-invariant uniform histogram |
//! | GLCM | 48 | contrast/correlation/energy/homogeneity for 12 displacements |
//! | GLDM | 12 | mean/contrast/ASM/entropy of absolute differences for 3 displacements |
//! | Fourier | 32 | 28 sector energies and 4 disk energies of the centered spectrum |
//! | Gabor | 40 | mean squared response magnitude for 8 scales x 5 orientations |

use std::fmt;
use std::str::FromStr;

mod fourier;
mod gabor;
mod glcm;
mod gldm;
mod lbp;

pub use fourier::{fourier_features, power_spectrum, SpectrumPartition};
pub use gabor::{gabor_features, GaborBank, GaborKernel, GaborParams, DEFAULT_KERNEL_SIDE};
pub use glcm::{glcm_displacements, glcm_features, glcm_features_with_levels, DEFAULT_GLCM_LEVELS};
pub use gldm::{gldm_features, GLDM_DISPLACEMENTS};
pub use lbp::{lbp, lbp_code, lbpv, riu2_map};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DescriptorId {
    Lbp,
    Lbpv,
    Glcm,
    Gldm,
    Fourier,
    Gabor,
}

impl DescriptorId {
    pub const ALL: [DescriptorId; 6] = [
        DescriptorId::Lbp,
        DescriptorId::Lbpv,
        DescriptorId::Glcm,
        DescriptorId::Gldm,
        DescriptorId::Fourier,
        DescriptorId::Gabor,
    ];

    /// Output length of this descriptor.
    #[allow(clippy::len_without_is_empty)]
    pub const fn len(self) -> usize {
        match self {
            DescriptorId::Lbp => 256,
            DescriptorId::Lbpv => 10,
            DescriptorId::Glcm => 48,
            DescriptorId::Gldm => 12,
            DescriptorId::Fourier => 32,
            DescriptorId::Gabor => 40,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            DescriptorId::Lbp => "lbp",
            DescriptorId::Lbpv => "lbpv",
            DescriptorId::Glcm => "glcm",
            DescriptorId::Gldm => "gldm",
            DescriptorId::Fourier => "fourier",
            DescriptorId::Gabor => "gabor",
        }
    }
}

impl fmt::Display for DescriptorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DescriptorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DescriptorId::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown descriptor '{s}' (expected lbp, lbpv, glcm, gldm, fourier or gabor)"))
    }
}

/// Descriptor output tagged with the descriptor that produced it.
///
/// A vector normally holds one block of [`DescriptorId::len`] values;
/// [`FeatureVector::concat`] joins blocks of the same descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    descriptor: DescriptorId,
    values: Vec<f64>,
}

impl FeatureVector {
    /// Panics if the length is not a positive multiple of the descriptor
    /// length or a value is not finite.
    pub fn new(descriptor: DescriptorId, values: Vec<f64>) -> Self {
        assert!(
            !values.is_empty() && values.len().is_multiple_of(descriptor.len()),
            "{descriptor} features must come in blocks of {}, got {}",
            descriptor.len(),
            values.len()
        );
        assert!(
            values.iter().all(|v| v.is_finite()),
            "{descriptor} produced a non-finite feature"
        );
        FeatureVector { descriptor, values }
    }

    pub fn descriptor(&self) -> DescriptorId {
        self.descriptor
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of descriptor-length blocks.
    pub fn blocks(&self) -> usize {
        self.values.len() / self.descriptor.len()
    }

    /// `self` followed by `other`. Panics if the descriptors differ.
    pub fn concat(&self, other: &FeatureVector) -> FeatureVector {
        assert_eq!(self.descriptor, other.descriptor, "cannot join different descriptors");
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        FeatureVector {
            descriptor: self.descriptor,
            values,
        }
    }
}

/// Tunable descriptor settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DescriptorParams {
    pub glcm_levels: usize,
    pub gabor: GaborParams,
}

impl Default for DescriptorParams {
    fn default() -> Self {
        DescriptorParams {
            glcm_levels: DEFAULT_GLCM_LEVELS,
            gabor: GaborParams::default(),
        }
    }
}
