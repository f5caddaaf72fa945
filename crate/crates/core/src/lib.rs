//! Texture classification with distance-transform feature augmentation.
//!
//! Each gray image is thresholded at a level `i` (pixels `<= i` become
//! foreground), the exact Euclidean distance transform of that mask is
//! rescaled back to 8 bits, and a texture descriptor computed on the distance
//! image is appended to the same descriptor computed on the original. Sweeping
//! `i` and cross-validating a classifier at each level shows which threshold,
//! if any, adds discriminative information.
//!
//! Modules, bottom-up:
//!
//! * [`imageio`]: PGM/PNG loading, BT.601 grayscale, class-per-directory datasets.
//! * [`transform`]: binarization, exact EDT (plus a brute-force reference), quantization.
//! * [`descriptors`]: LBP, LBPV, GLCM, GLDM, Fourier ring/wedge energies, Gabor energies.
//! * [`classify`]: z-scoring, 1-NN, Gaussian naive Bayes, stratified k-fold CV.
//! * [`harness`]: threshold sweep, synthetic textures, CSV reports.
//! * [`cli`]: argument parsing and command dispatch for the `edt-texture` binary.
//!
//! See the crate's `examples/` directory for one runnable program per capability.

pub mod classify;
pub mod cli;
pub mod descriptors;
mod error;
pub mod harness;
pub mod imageio;
pub mod selftest;
pub mod transform;

pub use error::{Error, Result};
pub use imageio::{GrayImage, LabeledDataset};
pub use transform::{BinaryImage, DistanceMap};
