//! Seeded synthetic texture classes.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imageio::{GrayImage, LabeledDataset};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TextureKind {
    /// Two-level checkerboard; `period` is the full cycle in pixels
    /// (each square is `period / 2` wide).
    Checkerboard { period: usize },
    /// Plane wave, `frequency` in cycles/pixel, `angle` in radians.
    Sinusoid { frequency: f64, angle: f64 },
    /// Uniform noise smoothed by a box filter of the given radius.
    CorrelatedNoise { blur_radius: usize },
    /// Linear ramp along `direction` (radians) plus uniform noise of
    /// `amplitude` gray levels.
    GradientNoise { direction: f64, amplitude: f64 },
}

impl TextureKind {
    pub fn slug(&self) -> &'static str {
        match self {
            TextureKind::Checkerboard { .. } => "checkerboard",
            TextureKind::Sinusoid { .. } => "sinusoid",
            TextureKind::CorrelatedNoise { .. } => "correlated_noise",
            TextureKind::GradientNoise { .. } => "gradient_noise",
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            TextureKind::Checkerboard { period } => period >= 2,
            TextureKind::Sinusoid { frequency, angle } => frequency > 0.0 && frequency <= 0.5 && angle.is_finite(),
            TextureKind::CorrelatedNoise { blur_radius } => blur_radius >= 1,
            TextureKind::GradientNoise { direction, amplitude } => direction.is_finite() && amplitude >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid texture parameters: {self:?}")))
        }
    }

    fn render(&self, size: usize, rng: &mut ChaCha8Rng) -> GrayImage {
        let pixels = match *self {
            TextureKind::Checkerboard { period } => {
                let cell = (period / 2).max(1);
                let (ox, oy) = (rng.random_range(0..period), rng.random_range(0..period));
                let dark: u8 = rng.random_range(20..=80);
                let light: u8 = rng.random_range(170..=235);
                grid(size, |x, y| {
                    if ((x + ox) / cell + (y + oy) / cell) % 2 == 0 {
                        dark as f64
                    } else {
                        light as f64
                    }
                })
            }
            TextureKind::Sinusoid { frequency, angle } => {
                let angle = angle + rng.random_range(-0.05..0.05);
                let phase = rng.random_range(0.0..TAU);
                let amplitude = rng.random_range(80.0..110.0);
                let mean = rng.random_range(118.0..138.0);
                let (sin, cos) = angle.sin_cos();
                let wave: Vec<f64> = grid(size, |x, y| {
                    mean + amplitude * (TAU * frequency * (x as f64 * cos + y as f64 * sin) + phase).cos()
                });
                wave.into_iter().map(|v| v + rng.random_range(-8.0..8.0)).collect()
            }
            TextureKind::CorrelatedNoise { blur_radius } => {
                let noise: Vec<f64> = (0..size * size).map(|_| rng.random_range(0.0..256.0)).collect();
                let blurred = box_blur(&noise, size, blur_radius);
                let contrast = rng.random_range(35.0..45.0);
                let mean = rng.random_range(118.0..138.0);
                standardize(&blurred, mean, contrast)
            }
            TextureKind::GradientNoise { direction, amplitude } => {
                let direction = direction + rng.random_range(-0.1..0.1);
                let offset = rng.random_range(-15.0..15.0);
                let (sin, cos) = direction.sin_cos();
                let c = (size as f64 - 1.0) / 2.0;
                let ramp: Vec<f64> = grid(size, |x, y| {
                    let t = ((x as f64 - c) * cos + (y as f64 - c) * sin) / (size as f64);
                    128.0 + offset + 150.0 * t
                });
                ramp.into_iter()
                    .map(|v| v + rng.random_range(-amplitude..=amplitude))
                    .collect()
            }
        };
        let pixels = pixels.into_iter().map(|v| v.round().clamp(0.0, 255.0) as u8).collect();
        GrayImage::new(size, size, pixels).expect("size checked by the spec")
    }
}

fn grid(size: usize, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    (0..size)
        .flat_map(|y| (0..size).map(move |x| (x, y)))
        .map(|(x, y)| f(x, y))
        .collect()
}

/// Separable box mean with wrap-around borders.
fn box_blur(src: &[f64], size: usize, radius: usize) -> Vec<f64> {
    let n = (2 * radius + 1) as f64;
    let wrap = |i: isize| i.rem_euclid(size as isize) as usize;
    let mut tmp = vec![0.0; src.len()];
    for y in 0..size {
        for x in 0..size {
            tmp[y * size + x] = (-(radius as isize)..=radius as isize)
                .map(|d| src[y * size + wrap(x as isize + d)])
                .sum::<f64>()
                / n;
        }
    }
    let mut out = vec![0.0; src.len()];
    for y in 0..size {
        for x in 0..size {
            out[y * size + x] = (-(radius as isize)..=radius as isize)
                .map(|d| tmp[wrap(y as isize + d) * size + x])
                .sum::<f64>()
                / n;
        }
    }
    out
}

fn standardize(values: &[f64], mean: f64, std: f64) -> Vec<f64> {
    let n = values.len() as f64;
    let m = values.iter().sum::<f64>() / n;
    let s = (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n)
        .sqrt()
        .max(1e-9);
    values.iter().map(|v| mean + std * (v - m) / s).collect()
}

/// `n` distinct texture classes, cycling through the four kinds with
/// parameters that shift on each pass.
pub fn default_palette(n: usize) -> Vec<TextureKind> {
    (0..n)
        .map(|i| {
            let round = (i / 4) as f64;
            match i % 4 {
                0 => TextureKind::Checkerboard {
                    period: 8 + 4 * (i / 4),
                },
                1 => TextureKind::Sinusoid {
                    frequency: (0.08 + 0.05 * round).min(0.45),
                    angle: (30.0 + 50.0 * round) * PI / 180.0,
                },
                2 => TextureKind::CorrelatedNoise {
                    blur_radius: 2 + 2 * (i / 4),
                },
                _ => TextureKind::GradientNoise {
                    direction: (60.0 * round) * PI / 180.0,
                    amplitude: 40.0,
                },
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthSpec {
    pub classes: Vec<TextureKind>,
    pub per_class: usize,
    /// Side length of the square images.
    pub size: usize,
    pub seed: u64,
}

impl SynthSpec {
    /// `classes` classes from [`default_palette`].
    pub fn with_palette(classes: usize, per_class: usize, size: usize, seed: u64) -> Self {
        SynthSpec {
            classes: default_palette(classes),
            per_class,
            size,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.classes.len() < 2 {
            return Err(Error::Config(format!(
                "synthetic dataset needs at least 2 classes, got {}",
                self.classes.len()
            )));
        }
        if self.per_class < 2 {
            return Err(Error::Config(format!(
                "synthetic dataset needs at least 2 images per class, got {}",
                self.per_class
            )));
        }
        if self.size < 8 {
            return Err(Error::Config(format!(
                "image size must be at least 8, got {}",
                self.size
            )));
        }
        self.classes.iter().try_for_each(TextureKind::validate)
    }
}

/// Mixes the dataset seed with an image's position so every image has its
/// own stream, independent of generation order.
fn image_seed(seed: u64, class: usize, index: usize) -> u64 {
    let mut z = seed ^ ((class as u64) << 32 | index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Renders `per_class` jittered images for each class, labels in class order.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> = (0..spec.classes.len())
        .flat_map(|c| (0..spec.per_class).map(move |k| (c, k)))
        .collect();
    let images = jobs
        .par_iter()
        .map(|&(c, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(image_seed(spec.seed, c, k));
            spec.classes[c].render(spec.size, &mut rng)
        })
        .collect();
    let labels = jobs.iter().map(|&(c, _)| c).collect();
    let class_names = spec
        .classes
        .iter()
        .enumerate()
        .map(|(i, kind)| format!("{i:02}_{}", kind.slug()))
        .collect();
    LabeledDataset::new(images, labels, class_names)
}
