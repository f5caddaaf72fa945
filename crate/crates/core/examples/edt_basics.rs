//! Threshold an image, take its exact distance transform, and print the
//! result next to the brute-force reference.
//!
//!     cargo run --example edt_basics [image.pgm|png] [threshold]

use edt_texture::imageio::load_image;
use edt_texture::transform::{binarize, edt_bruteforce, edt_exact, quantize_distance};
use edt_texture::GrayImage;

fn main() -> edt_texture::Result<()> {
    let mut args = std::env::args().skip(1);
    let img = match args.next() {
        Some(path) => load_image(path)?,
        // a dark ring on a bright background
        None => GrayImage::from_fn(15, 11, |x, y| {
            let r2 = (x as i32 - 7).pow(2) + (y as i32 - 5).pow(2);
            if (9..=16).contains(&r2) {
                30
            } else {
                220
            }
        })?,
    };
    let threshold: u8 = args
        .next()
        .map(|s| s.parse().expect("threshold in 0..=255"))
        .unwrap_or(100);

    let mask = binarize(&img, threshold);
    let map = edt_exact(&mask);
    assert_eq!(map, edt_bruteforce(&mask));
    println!(
        "{}x{} image, threshold {threshold}: {} foreground pixels, max distance {:.3}",
        img.width(),
        img.height(),
        mask.foreground_count(),
        (map.max_sq_dist() as f64).sqrt()
    );

    if img.width() <= 40 && img.height() <= 40 {
        println!("\nsquared distances:");
        for y in 0..map.height() {
            let row: Vec<String> = (0..map.width()).map(|x| format!("{:3}", map.get(x, y))).collect();
            println!("{}", row.join(""));
        }
        let q = quantize_distance(&map);
        println!("\nquantized to 8 bits:");
        for y in 0..q.height() {
            let row: Vec<String> = (0..q.width()).map(|x| format!("{:4}", q.get(x, y))).collect();
            println!("{}", row.join(""));
        }
    }
    Ok(())
}
