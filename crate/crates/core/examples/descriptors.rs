//! Compute all six descriptors for one image and its distance image.
//!
//!     cargo run --example descriptors [image.pgm|png] [threshold]

use edt_texture::descriptors::DescriptorId;
use edt_texture::harness::{combined_vector, extract_features};
use edt_texture::imageio::load_image;
use edt_texture::GrayImage;

fn summary(values: &[f64]) -> String {
    let shown: Vec<String> = values.iter().take(4).map(|v| format!("{v:.4}")).collect();
    format!("[{}{}]", shown.join(", "), if values.len() > 4 { ", ..." } else { "" })
}

fn main() -> edt_texture::Result<()> {
    let mut args = std::env::args().skip(1);
    let img = match args.next() {
        Some(path) => load_image(path)?,
        None => GrayImage::from_fn(64, 64, |x, y| {
            let wave = (x as f64 * 0.6).sin() * (y as f64 * 0.25).cos();
            (128.0 + 100.0 * wave) as u8
        })?,
    };
    let threshold: u8 = args
        .next()
        .map(|s| s.parse().expect("threshold in 0..=255"))
        .unwrap_or(128);

    for d in DescriptorId::ALL {
        let original = extract_features(&img, d)?;
        let combined = combined_vector(&img, threshold, d)?;
        println!(
            "{:8} len {:3}  original {}",
            d.name(),
            original.len(),
            summary(original.values())
        );
        let distance = &combined.values()[d.len()..];
        println!("{:8} len {:3}  distance {}", "", distance.len(), summary(distance));
    }
    Ok(())
}
