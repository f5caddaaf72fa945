use std::f64::consts::PI;

use edt_texture::descriptors::{
    fourier_features, gabor_features, glcm_features, gldm_features, lbp, lbpv, DescriptorId, GaborBank,
};
use edt_texture::harness::extract_features;
use edt_texture::GrayImage;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_image(seed: u64, w: usize, h: usize, lo: u8, hi: u8) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(w, h, |_, _| rng.random_range(lo..=hi)).unwrap()
}

fn rotate_180(img: &GrayImage) -> GrayImage {
    let (w, h) = (img.width(), img.height());
    GrayImage::from_fn(w, h, |x, y| img.get(w - 1 - x, h - 1 - y)).unwrap()
}

fn sinusoid(size: usize, frequency: f64, angle: f64) -> GrayImage {
    let (sin, cos) = angle.sin_cos();
    GrayImage::from_fn(size, size, |x, y| {
        let t = 2.0 * PI * frequency * (x as f64 * cos + y as f64 * sin);
        (127.5 + 120.0 * t.cos()).round() as u8
    })
    .unwrap()
}

#[test]
fn gabor_matched_sinusoid_peaks_at_its_filter() {
    let bank = GaborBank::with_default_params();
    let mut misses = Vec::new();
    for s in 0..GaborBank::SCALES {
        for o in 0..GaborBank::ORIENTATIONS {
            let k = bank.kernel(s, o);
            let f = gabor_features(&sinusoid(128, k.frequency, k.orientation), &bank).unwrap();
            let argmax = f
                .values()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
            if argmax != s * GaborBank::ORIENTATIONS + o {
                misses.push(((s, o), (argmax / 5, argmax % 5)));
            }
        }
    }
    assert!(
        misses.is_empty(),
        "filters not maximal for their own sinusoid: {misses:?}"
    );
}

#[test]
fn gabor_energy_invariant_under_half_turn() {
    let bank = GaborBank::with_default_params();
    for seed in 0..3 {
        let img = random_image(seed, 45, 38, 0, 255);
        let a = gabor_features(&img, &bank).unwrap();
        let b = gabor_features(&rotate_180(&img), &bank).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{x} vs {y}");
        }
    }
}

#[test]
fn gabor_energy_ignores_brightness_offset() {
    let bank = GaborBank::with_default_params();
    let img = random_image(9, 40, 40, 0, 200);
    let brighter = img.map(|v| v + 55);
    let a = gabor_features(&img, &bank).unwrap();
    let b = gabor_features(&brighter, &bank).unwrap();
    for (x, y) in a.values().iter().zip(b.values()) {
        assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{x} vs {y}");
    }
}

#[test]
fn fourier_constant_and_zero_images() {
    let zero = fourier_features(&GrayImage::filled(16, 12, 0).unwrap()).unwrap();
    assert!(zero.values().iter().all(|&v| v == 0.0));
    let constant = fourier_features(&GrayImage::filled(16, 12, 9).unwrap()).unwrap();
    assert_eq!(&constant.values()[28..], &[1.0; 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lbp_invariant_under_increasing_maps(seed in any::<u64>(), w in 3usize..20, h in 3usize..20) {
        let img = random_image(seed, w, h, 0, 126);
        let mapped = img.map(|v| (2 * v as u16 + 3).min(255) as u8);
        prop_assert_eq!(lbp(&img).unwrap(), lbp(&mapped).unwrap());
    }

    #[test]
    fn lbp_counts_interior_pixels(seed in any::<u64>(), w in 3usize..20, h in 3usize..20) {
        let f = lbp(&random_image(seed, w, h, 0, 255)).unwrap();
        let interior = ((w - 2) * (h - 2)) as f64;
        let counts: f64 = f.values().iter().map(|p| p * interior).sum();
        prop_assert!((counts - interior).abs() < 1e-9);
        prop_assert!(f.values().iter().all(|p| (p * interior - (p * interior).round()).abs() < 1e-9));
    }

    #[test]
    fn lbpv_is_a_distribution_or_zero(seed in any::<u64>(), w in 3usize..20, h in 3usize..20, hi in 0u8..=255) {
        let f = lbpv(&random_image(seed, w, h, 0, hi)).unwrap();
        let sum: f64 = f.values().iter().sum();
        prop_assert!(f.values().iter().all(|&v| v >= 0.0));
        prop_assert!(sum == 0.0 || (sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn glcm_feature_ranges(seed in any::<u64>(), w in 3usize..24, h in 3usize..24, hi in 0u8..=255) {
        let f = glcm_features(&random_image(seed, w, h, 0, hi)).unwrap();
        for c in f.values().chunks(4) {
            let [contrast, correlation, energy, homogeneity] = [c[0], c[1], c[2], c[3]];
            prop_assert!(contrast >= 0.0);
            prop_assert!((-1.0..=1.0).contains(&correlation));
            prop_assert!(energy > 0.0 && energy <= 1.0 + 1e-12);
            prop_assert!(homogeneity > 0.0 && homogeneity <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn gldm_feature_ranges(seed in any::<u64>(), w in 6usize..24, h in 6usize..24, hi in 0u8..=255) {
        let f = gldm_features(&random_image(seed, w, h, 0, hi)).unwrap();
        for c in f.values().chunks(4) {
            prop_assert!(c[0] >= 0.0 && c[1] >= 0.0);
            prop_assert!(c[2] > 0.0 && c[2] <= 1.0 + 1e-12);
            prop_assert!(c[3] >= 0.0 && c[3] <= 256f64.ln() + 1e-12);
        }
    }

    #[test]
    fn fourier_ranges_and_partition(seed in any::<u64>(), w in 2usize..40, h in 2usize..40) {
        let f = fourier_features(&random_image(seed, w, h, 0, 255)).unwrap();
        let v = f.values();
        prop_assert!(v.iter().all(|&e| (0.0..=1.0 + 1e-12).contains(&e)));
        for i in 0..4 {
            let sum: f64 = v[i * 7..i * 7 + 7].iter().sum();
            prop_assert!((sum - v[28 + i]).abs() < 1e-9);
        }
        prop_assert!(v[28..].windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn every_descriptor_has_fixed_length(seed in any::<u64>(), w in 31usize..48, h in 31usize..48) {
        let img = random_image(seed, w, h, 0, 255);
        for d in DescriptorId::ALL {
            let f = extract_features(&img, d).unwrap();
            prop_assert_eq!(f.len(), d.len());
            prop_assert!(f.values().iter().all(|v| v.is_finite()));
            if d == DescriptorId::Gabor {
                prop_assert!(f.values().iter().all(|&v| v >= 0.0));
            }
        }
    }
}
