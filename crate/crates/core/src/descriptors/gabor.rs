//! Gabor filter bank with 8 scales and 5 orientations.
//!
//! Bank design follows the usual half-peak tangency construction: center
//! frequencies are spaced geometrically between `lower_freq` and
//! `upper_freq`, and the Gaussian envelope widths are chosen so the
//! half-magnitude contours of neighboring filters touch in the frequency
//! plane. Each kernel is normalized so its envelope sums to one (equal gain
//! for a matched sinusoid across scales) and then made zero-mean.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex};

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::fourier::fft2;
use super::{DescriptorId, FeatureVector};
use crate::error::{Error, Result};
use crate::imageio::GrayImage;

/// One zero-padded kernel DFT per filter.
type Spectra = Arc<Vec<Vec<Complex64>>>;

pub const DEFAULT_KERNEL_SIDE: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaborParams {
    /// Center frequency of the coarsest scale, cycles/pixel.
    pub lower_freq: f64,
    /// Center frequency of the finest scale, cycles/pixel.
    pub upper_freq: f64,
    /// Odd kernel side length, at least 11.
    pub kernel_side: usize,
}

impl Default for GaborParams {
    fn default() -> Self {
        GaborParams {
            lower_freq: 0.05,
            upper_freq: 0.4,
            kernel_side: DEFAULT_KERNEL_SIDE,
        }
    }
}

/// One complex kernel, row-major, `side x side`.
#[derive(Clone, Debug)]
pub struct GaborKernel {
    pub frequency: f64,
    pub orientation: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub taps: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct GaborBank {
    params: GaborParams,
    kernels: Vec<GaborKernel>,
    /// Kernel spectra per padded `(width, height)`, filled on first use.
    spectra: Arc<Mutex<HashMap<(usize, usize), Spectra>>>,
}

impl GaborBank {
    pub const SCALES: usize = 8;
    pub const ORIENTATIONS: usize = 5;

    pub fn new(params: GaborParams) -> Result<Self> {
        let side = params.kernel_side;
        if side < 11 || side.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "Gabor kernel side must be odd and >= 11, got {side}"
            )));
        }
        let (lo, hi) = (params.lower_freq, params.upper_freq);
        if !(lo > 0.0 && lo < hi && hi <= 0.5) {
            return Err(Error::Config(format!(
                "Gabor frequencies must satisfy 0 < lower < upper <= 0.5, got {lo} and {hi}"
            )));
        }

        let scales = Self::SCALES as f64;
        let orientations = Self::ORIENTATIONS as f64;
        let ratio = (hi / lo).powf(1.0 / (scales - 1.0));
        let two_ln2 = 2.0 * LN_2;
        let sigma_u = (ratio - 1.0) * hi / ((ratio + 1.0) * two_ln2.sqrt());
        let sigma_v = (PI / (2.0 * orientations)).tan() * (hi - two_ln2 * sigma_u * sigma_u / hi)
            / (two_ln2 - two_ln2 * two_ln2 * sigma_u * sigma_u / (hi * hi)).sqrt();
        let sigma_x = 1.0 / (2.0 * PI * sigma_u);
        let sigma_y = 1.0 / (2.0 * PI * sigma_v);

        let mut kernels = Vec::with_capacity(Self::SCALES * Self::ORIENTATIONS);
        for s in 0..Self::SCALES {
            // s = 0 is the coarsest scale; the finest sits at `upper_freq`
            let shrink = ratio.powi((Self::SCALES - 1 - s) as i32);
            for o in 0..Self::ORIENTATIONS {
                kernels.push(build_kernel(
                    side,
                    hi / shrink,
                    o as f64 * PI / orientations,
                    sigma_x * shrink,
                    sigma_y * shrink,
                ));
            }
        }
        Ok(GaborBank {
            params,
            kernels,
            spectra: Arc::default(),
        })
    }

    pub fn with_default_params() -> Self {
        Self::new(GaborParams::default()).expect("default Gabor parameters are valid")
    }

    pub fn params(&self) -> &GaborParams {
        &self.params
    }

    pub fn kernel_side(&self) -> usize {
        self.params.kernel_side
    }

    /// Kernels in scale-major, orientation-minor order.
    pub fn kernels(&self) -> &[GaborKernel] {
        &self.kernels
    }

    pub fn kernel(&self, scale: usize, orientation: usize) -> &GaborKernel {
        &self.kernels[scale * Self::ORIENTATIONS + orientation]
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    /// DFTs of all kernels, origin-centered and zero-padded to `pw x ph`.
    fn spectra(&self, planner: &mut FftPlanner<f64>, pw: usize, ph: usize) -> Spectra {
        if let Some(s) = self.spectra.lock().expect("spectra lock").get(&(pw, ph)) {
            return s.clone();
        }
        let side = self.kernel_side();
        let half = side / 2;
        let computed: Vec<Vec<Complex64>> = self
            .kernels
            .iter()
            .map(|kernel| {
                let mut buf = vec![Complex64::default(); pw * ph];
                for ky in 0..side {
                    let y = (ky + ph - half) % ph;
                    for kx in 0..side {
                        let x = (kx + pw - half) % pw;
                        buf[y * pw + x] = kernel.taps[ky * side + kx];
                    }
                }
                fft2(planner, &mut buf, pw, ph, false);
                buf
            })
            .collect();
        // a racing thread may have inserted the same (deterministic) value
        self.spectra
            .lock()
            .expect("spectra lock")
            .entry((pw, ph))
            .or_insert_with(|| Arc::new(computed))
            .clone()
    }
}

fn build_kernel(side: usize, frequency: f64, orientation: f64, sigma_x: f64, sigma_y: f64) -> GaborKernel {
    let half = (side / 2) as isize;
    let (sin, cos) = orientation.sin_cos();
    let mut taps = Vec::with_capacity(side * side);
    let mut envelope_sum = 0.0;
    for y in -half..=half {
        for x in -half..=half {
            let (x, y) = (x as f64, y as f64);
            let along = x * cos + y * sin;
            let across = -x * sin + y * cos;
            let envelope = (-0.5 * ((along / sigma_x).powi(2) + (across / sigma_y).powi(2))).exp();
            envelope_sum += envelope;
            taps.push(Complex64::from_polar(envelope, 2.0 * PI * frequency * along));
        }
    }
    for t in taps.iter_mut() {
        *t /= envelope_sum;
    }
    let mean = taps.iter().sum::<Complex64>() / (side * side) as f64;
    for t in taps.iter_mut() {
        *t -= mean;
    }
    GaborKernel {
        frequency,
        orientation,
        sigma_x,
        sigma_y,
        taps,
    }
}

/// Smallest `m >= n` with no prime factor above 5.
fn fast_len(n: usize) -> usize {
    (n..)
        .find(|&m| {
            let mut r = m;
            for p in [2, 3, 5] {
                while r % p == 0 {
                    r /= p;
                }
            }
            r == 1
        })
        .expect("5-smooth numbers are unbounded")
}

/// Mirror index without repeating the edge sample (`-1 -> 1`, `n -> n - 2`).
#[inline]
pub(crate) fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let r = if i < 0 {
        -i
    } else if i >= n {
        2 * (n - 1) - i
    } else {
        i
    };
    r as usize
}

/// Mean squared magnitude of each filter's response.
///
/// Responses are same-size convolutions of the reflect-padded image, computed
/// through the FFT. Output is scale-major, orientation-minor.
pub fn gabor_features(img: &GrayImage, bank: &GaborBank) -> Result<FeatureVector> {
    let side = bank.kernel_side();
    let (w, h) = (img.width(), img.height());
    if w < side || h < side {
        return Err(Error::ImageTooSmall {
            descriptor: "gabor",
            width: w,
            height: h,
            min_width: side,
            min_height: side,
        });
    }
    let half = side / 2;
    // any size holding the reflected margins works; 5-smooth sizes are fast
    let (pw, ph) = (fast_len(w + 2 * half), fast_len(h + 2 * half));
    let mut planner = FftPlanner::new();

    let mut padded = vec![Complex64::default(); pw * ph];
    for py in 0..h + 2 * half {
        let y = reflect(py as isize - half as isize, h);
        for px in 0..w + 2 * half {
            let x = reflect(px as isize - half as isize, w);
            padded[py * pw + px] = Complex64::new(img.get(x, y) as f64, 0.0);
        }
    }
    fft2(&mut planner, &mut padded, pw, ph, false);

    let scale = 1.0 / (pw * ph) as f64;
    let mut values = Vec::with_capacity(bank.len());
    let spectra = bank.spectra(&mut planner, pw, ph);
    let mut buf = vec![Complex64::default(); pw * ph];
    for spectrum in spectra.iter() {
        for ((b, k), p) in buf.iter_mut().zip(spectrum).zip(&padded) {
            *b = k * p;
        }
        fft2(&mut planner, &mut buf, pw, ph, true);
        let mut energy = 0.0;
        for y in half..half + h {
            for x in half..half + w {
                energy += (buf[y * pw + x] * scale).norm_sqr();
            }
        }
        values.push(energy / (w * h) as f64);
    }
    Ok(FeatureVector::new(DescriptorId::Gabor, values))
}
