//! Built-in oracle and invariant checks, run by `edt-texture selftest`.
//!
//! Sizes are kept small so the whole suite finishes in about a second; the
//! integration tests exercise the same properties at larger scale.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{cross_validate, ClassifierKind, FeatureMatrix};
use crate::descriptors::{fourier_features, power_spectrum, riu2_map, DescriptorId};
use crate::harness::{extract_features, generate_synthetic, SynthSpec};
use crate::imageio::GrayImage;
use crate::transform::{binarize, edt_bruteforce, edt_exact, BinaryImage};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success, otherwise the first failing case.
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

type Check = fn(&mut ChaCha8Rng) -> std::result::Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("edt exact equals brute force", edt_oracle),
    ("threshold monotonicity", monotonicity),
    ("riu2 uniform pattern count", riu2_counts),
    ("descriptor lengths and finiteness", descriptor_lengths),
    ("parseval identity", parseval),
    ("fourier sectors sum to disks", fourier_partition),
    ("gabor constant image is zero", gabor_constant),
    ("classifiers separate distant blobs", blob_separation),
    ("synthetic data is deterministic", synth_determinism),
];

/// Runs every check with a fixed seed. Order is stable.
pub fn run_selftest() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f_7e57 + k as u64);
            let outcome = check(&mut rng);
            CheckResult {
                name,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect()
}

fn random_image(rng: &mut ChaCha8Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |_, _| rng.random()).expect("nonzero size")
}

fn edt_oracle(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let mut masks = vec![
        BinaryImage::from_fn(9, 7, |_, _| false),
        BinaryImage::from_fn(9, 7, |_, _| true),
        BinaryImage::from_fn(9, 7, |x, y| x == 4 && y == 3),
        BinaryImage::from_fn(9, 7, |x, y| x == 0 || y == 0 || x == 8 || y == 6),
        BinaryImage::from_fn(1, 1, |_, _| true),
    ];
    for _ in 0..200 {
        let (w, h) = (rng.random_range(1..=24), rng.random_range(1..=24));
        let density: f64 = rng.random_range(0.01..0.99);
        masks.push(BinaryImage::from_fn(w, h, |_, _| rng.random_bool(density)));
    }
    for m in &masks {
        if edt_exact(m) != edt_bruteforce(m) {
            return Err(format!("mismatch on a {}x{} mask", m.width(), m.height()));
        }
    }
    Ok(())
}

fn monotonicity(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    for _ in 0..5 {
        let img = random_image(rng, 16, 16);
        let mut prev = binarize(&img, 0);
        let mut prev_edt = edt_exact(&prev);
        for i in 1..=255u8 {
            let cur = binarize(&img, i);
            if prev.mask().iter().zip(cur.mask()).any(|(&a, &b)| a && !b) {
                return Err(format!("foreground shrank at threshold {i}"));
            }
            let cur_edt = edt_exact(&cur);
            if !prev_edt.foreground_empty() && prev_edt.sq_dist().iter().zip(cur_edt.sq_dist()).any(|(a, b)| b > a) {
                return Err(format!("distance grew at threshold {i}"));
            }
            prev = cur;
            prev_edt = cur_edt;
        }
    }
    Ok(())
}

fn riu2_counts(_: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let nonuniform = (0..=255u8).filter(|&c| riu2_map(c) == 9).count();
    if nonuniform == 198 {
        Ok(())
    } else {
        Err(format!("{} uniform codes, expected 58", 256 - nonuniform))
    }
}

fn descriptor_lengths(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let img = random_image(rng, 41, 37);
    for d in DescriptorId::ALL {
        let f = extract_features(&img, d).map_err(|e| e.to_string())?;
        if f.len() != d.len() || f.values().iter().any(|v| !v.is_finite()) {
            return Err(format!("{d}: length {} or non-finite values", f.len()));
        }
    }
    Ok(())
}

fn parseval(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    for _ in 0..10 {
        let (w, h) = (rng.random_range(4..40), rng.random_range(4..40));
        let img = random_image(rng, w, h);
        let spatial: f64 = img.pixels().iter().map(|&v| (v as f64).powi(2)).sum();
        let spectral: f64 = power_spectrum(&img).iter().sum::<f64>() / (w * h) as f64;
        if ((spatial - spectral) / spatial).abs() > 1e-9 {
            return Err(format!("{w}x{h}: {spatial} vs {spectral}"));
        }
    }
    Ok(())
}

fn fourier_partition(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    for _ in 0..10 {
        let size = rng.random_range(8..48);
        let f = fourier_features(&random_image(rng, size, size)).map_err(|e| e.to_string())?;
        let v = f.values();
        for disk in 0..4 {
            let sum: f64 = v[disk * 7..disk * 7 + 7].iter().sum();
            if (sum - v[28 + disk]).abs() > 1e-9 {
                return Err(format!("disk {disk}: sectors {sum} vs disk {}", v[28 + disk]));
            }
        }
        if v[28..].windows(2).any(|p| p[1] < p[0]) {
            return Err("disk energies decrease".into());
        }
    }
    Ok(())
}

fn gabor_constant(_: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let img = GrayImage::filled(40, 40, 200).expect("nonzero size");
    let f = extract_features(&img, DescriptorId::Gabor).map_err(|e| e.to_string())?;
    match f.values().iter().map(|v| v.abs()).fold(0.0, f64::max) {
        m if m < 1e-9 => Ok(()),
        m => Err(format!("max energy {m:e}")),
    }
}

fn blob_separation(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for class in 0..2 {
        for _ in 0..30 {
            rows.push(vec![
                class as f64 * 10.0 + rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ]);
            labels.push(class);
        }
    }
    let m = FeatureMatrix::from_rows(&rows, labels).map_err(|e| e.to_string())?;
    for kind in [ClassifierKind::Knn1, ClassifierKind::Gnb] {
        let report = cross_validate(&m, kind, 5, 1).map_err(|e| e.to_string())?;
        if report.mean != 1.0 {
            return Err(format!("{kind}: accuracy {}", report.mean));
        }
    }
    Ok(())
}

fn synth_determinism(_: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let spec = SynthSpec::with_palette(4, 3, 16, 9);
    let a = generate_synthetic(&spec).map_err(|e| e.to_string())?;
    let b = generate_synthetic(&spec).map_err(|e| e.to_string())?;
    if a == b {
        Ok(())
    } else {
        Err("two generations differ".into())
    }
}
