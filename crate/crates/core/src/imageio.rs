//! Image and dataset loading.
//!
//! Binary PGM (P5) is the reference format; 8-bit grayscale and RGB PNG are
//! accepted for practical datasets. Everything is converted to [`GrayImage`]
//! at load time.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use log::{debug, warn};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(GrayImage { width, height, pixels })
    }

    /// Image filled with a single intensity.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn min_intensity(&self) -> u8 {
        self.pixels.iter().copied().min().unwrap_or(0)
    }

    /// Applies `f` to every intensity.
    pub fn map(&self, f: impl Fn(u8) -> u8) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// BT.601 luma, rounded half up.
///
/// Integer arithmetic keeps the rounding exact: the weights are
/// 299/587/114 thousandths.
pub fn to_grayscale(r: u8, g: u8, b: u8) -> u8 {
    let weighted = 299 * r as u32 + 587 * g as u32 + 114 * b as u32;
    ((weighted + 500) / 1000).min(255) as u8
}

/// Loads a PGM (P5) or PNG file as grayscale.
///
/// The format is chosen from the file's magic bytes, not its extension.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"P5") {
        parse_pgm(&bytes).map_err(|reason| Error::format(path, reason))
    } else if bytes.starts_with(&[0x89, b'P', b'N', b'G']) {
        decode_png(&bytes).map_err(|reason| Error::format(path, reason))
    } else if bytes.starts_with(b"P2") {
        Err(Error::format(path, "ASCII PGM (P2) is not supported, use binary P5"))
    } else {
        Err(Error::format(path, "unsupported format (expected binary PGM or PNG)"))
    }
}

fn parse_pgm(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let mut pos = 2;
    let mut header = [0usize; 3];
    for (slot, name) in header.iter_mut().zip(["width", "height", "maxval"]) {
        // whitespace and comments before each field
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while let Some(&b) = bytes.get(pos) {
                        pos += 1;
                        if b == b'\n' || b == b'\r' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(format!("corrupt header: missing {name}"));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *slot = text
            .parse()
            .map_err(|_| format!("corrupt header: {name} '{text}' out of range"))?;
    }
    let [width, height, maxval] = header;
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err("corrupt header: expected whitespace after maxval".into()),
    }
    if maxval == 0 || maxval > 255 {
        return Err(format!("unsupported maxval {maxval} (only 8-bit PGM is accepted)"));
    }
    if width == 0 || height == 0 {
        return Err(format!("invalid dimensions {width}x{height}"));
    }
    let len = width
        .checked_mul(height)
        .ok_or_else(|| format!("invalid dimensions {width}x{height}"))?;
    let data = &bytes[pos..];
    if data.len() < len {
        return Err(format!(
            "truncated pixel data: expected {len} bytes, found {}",
            data.len()
        ));
    }
    let pixels = data[..len].to_vec();
    if let Some(v) = pixels.iter().find(|&&v| v as usize > maxval) {
        return Err(format!("pixel value {v} exceeds maxval {maxval}"));
    }
    GrayImage::new(width, height, pixels).map_err(|e| e.to_string())
}

fn decode_png(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    let mut reader = decoder.read_info().map_err(|e| format!("corrupt PNG: {e}"))?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(format!(
            "unsupported PNG bit depth {:?} (only 8-bit is accepted)",
            depth
        ));
    }
    let mut buf = vec![0; reader.output_buffer_size().ok_or("PNG too large")?];
    let info = reader.next_frame(&mut buf).map_err(|e| format!("corrupt PNG: {e}"))?;
    let (width, height) = (info.width as usize, info.height as usize);
    let data = &buf[..info.buffer_size()];
    let pixels = match color {
        png::ColorType::Grayscale => strip_rows(data, width, height, 1, info.line_size),
        png::ColorType::Rgb => strip_rows(data, width, height, 3, info.line_size)
            .chunks_exact(3)
            .map(|c| to_grayscale(c[0], c[1], c[2]))
            .collect(),
        other => {
            return Err(format!(
                "unsupported PNG color type {:?} (expected grayscale or RGB)",
                other
            ))
        }
    };
    GrayImage::new(width, height, pixels).map_err(|e| e.to_string())
}

fn strip_rows(data: &[u8], width: usize, height: usize, channels: usize, line: usize) -> Vec<u8> {
    let row = width * channels;
    (0..height)
        .flat_map(|y| &data[y * line..y * line + row])
        .copied()
        .collect()
}

/// Writes a binary PGM (P5, maxval 255).
pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write!(out, "P5\n{} {}\n255\n", img.width, img.height)
        .and_then(|_| out.write_all(&img.pixels))
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// Writes an 8-bit grayscale PNG.
pub fn write_png(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut encoder = png::Encoder::new(BufWriter::new(file), img.width as u32, img.height as u32);
    encoder.set_color(png::ColorType::Grayscale);
    encoder.set_depth(png::BitDepth::Eight);
    encoder
        .write_header()
        .and_then(|mut w| w.write_image_data(&img.pixels))
        .map_err(|e| Error::format(path, format!("PNG encoding failed: {e}")))
}

/// Images grouped into classes.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    pub images: Vec<GrayImage>,
    pub labels: Vec<usize>,
    pub class_names: Vec<String>,
    /// Files with a supported extension that failed to load.
    pub skipped: usize,
}

impl LabeledDataset {
    pub fn new(images: Vec<GrayImage>, labels: Vec<usize>, class_names: Vec<String>) -> Result<Self> {
        if images.len() != labels.len() {
            return Err(Error::Dataset(format!(
                "{} images but {} labels",
                images.len(),
                labels.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::Dataset(format!(
                "label {bad} out of range for {} classes",
                class_names.len()
            )));
        }
        Ok(LabeledDataset {
            images,
            labels,
            class_names,
            skipped: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_names.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Fails if any class has fewer than `min` samples.
    pub fn require_min_per_class(&self, min: usize) -> Result<()> {
        for (name, &count) in self.class_names.iter().zip(&self.class_counts()) {
            if count < min {
                return Err(Error::Dataset(format!(
                    "class '{name}' has {count} sample(s), at least {min} required"
                )));
            }
        }
        Ok(())
    }
}

fn is_supported(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| matches!(e.to_ascii_lowercase().as_str(), "pgm" | "png"))
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(dir, e))?;
    entries.sort();
    Ok(entries)
}

/// Loads `<root>/<class>/<image>` trees.
///
/// Classes are sorted subdirectory names and images within a class are sorted
/// by filename, so the result depends only on the directory contents.
pub fn load_dataset(root: impl AsRef<Path>) -> Result<LabeledDataset> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::Dataset(format!(
            "no classes found: {} is not a directory",
            root.display()
        )));
    }
    let class_dirs: Vec<PathBuf> = sorted_entries(root)?.into_iter().filter(|p| p.is_dir()).collect();
    if class_dirs.is_empty() {
        return Err(Error::Dataset(format!("no classes found in {}", root.display())));
    }

    let mut images = Vec::new();
    let mut labels = Vec::new();
    let mut class_names = Vec::new();
    let mut skipped = 0;
    for (label, dir) in class_dirs.iter().enumerate() {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let files: Vec<PathBuf> = sorted_entries(dir)?
            .into_iter()
            .filter(|p| {
                let keep = p.is_file() && is_supported(p);
                if !keep {
                    debug!("ignoring {}", p.display());
                }
                keep
            })
            .collect();
        let loaded: Vec<Result<GrayImage>> = files.par_iter().map(load_image).collect();
        let before = images.len();
        for result in loaded {
            match result {
                Ok(img) => {
                    images.push(img);
                    labels.push(label);
                }
                Err(e) => {
                    warn!("skipping unreadable image: {e}");
                    skipped += 1;
                }
            }
        }
        if images.len() == before {
            return Err(Error::Dataset(format!(
                "class '{name}' has no readable images in {}",
                dir.display()
            )));
        }
        class_names.push(name);
    }
    if skipped > 0 {
        warn!("{skipped} file(s) skipped while loading {}", root.display());
    }
    let mut dataset = LabeledDataset::new(images, labels, class_names)?;
    dataset.skipped = skipped;
    Ok(dataset)
}

/// Writes a dataset as a `<root>/<class>/<NNN>.pgm` tree.
pub fn write_dataset(dataset: &LabeledDataset, root: impl AsRef<Path>) -> Result<()> {
    let root = root.as_ref();
    let mut counters = vec![0usize; dataset.num_classes()];
    for name in &dataset.class_names {
        let dir = root.join(name);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    }
    for (img, &label) in dataset.images.iter().zip(&dataset.labels) {
        let path = root
            .join(&dataset.class_names[label])
            .join(format!("{:04}.pgm", counters[label]));
        counters[label] += 1;
        write_pgm(img, path)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grayscale_examples() {
        assert_eq!(to_grayscale(0, 0, 0), 0);
        assert_eq!(to_grayscale(255, 255, 255), 255);
        assert_eq!(to_grayscale(100, 150, 200), 141);
        assert_eq!(to_grayscale(255, 0, 0), 76);
    }

    #[test]
    fn grayscale_equal_channels_and_monotone() {
        for v in 0..=255u8 {
            assert_eq!(to_grayscale(v, v, v), v);
        }
        for a in (0..255u8).step_by(7) {
            for b in (0..=255u8).step_by(11) {
                assert!(to_grayscale(a + 1, b, b) >= to_grayscale(a, b, b));
                assert!(to_grayscale(b, a + 1, b) >= to_grayscale(b, a, b));
                assert!(to_grayscale(b, b, a + 1) >= to_grayscale(b, b, a));
            }
        }
    }

    #[test]
    fn pgm_passthrough() {
        let img = parse_pgm(b"P5\n2 2\n255\n\x00\xff\x11\x2a").unwrap();
        assert_eq!(img.width(), 2);
        assert_eq!(img.height(), 2);
        assert_eq!(img.pixels(), &[0, 255, 17, 42]);
    }

    #[test]
    fn pgm_header_with_comment() {
        let img = parse_pgm(b"P5 # made by hand\n3 1 # dims\n255 \x01\x02\x03").unwrap();
        assert_eq!(img.pixels(), &[1, 2, 3]);
    }

    #[test]
    fn pgm_rejects_bad_headers() {
        assert!(parse_pgm(b"P5\n2 2\n65535\n").unwrap_err().contains("maxval"));
        assert!(parse_pgm(b"P5\n2\n").unwrap_err().contains("height"));
        assert!(parse_pgm(b"P5\n2 2\n255\n\x00").unwrap_err().contains("truncated"));
        assert!(parse_pgm(b"P5\n1 1\n15\n\x10").unwrap_err().contains("exceeds"));
        assert!(parse_pgm(b"P5\n0 1\n255\n").unwrap_err().contains("dimensions"));
    }

    #[test]
    fn image_invariants_enforced() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 4]).is_ok());
    }

    #[test]
    fn dataset_label_checks() {
        let img = GrayImage::filled(2, 2, 0).unwrap();
        assert!(LabeledDataset::new(vec![img.clone()], vec![1], vec!["a".into()]).is_err());
        assert!(LabeledDataset::new(vec![img.clone()], vec![], vec!["a".into()]).is_err());
        let ds = LabeledDataset::new(vec![img], vec![0], vec!["a".into()]).unwrap();
        assert!(ds.require_min_per_class(2).is_err());
        assert!(ds.require_min_per_class(1).is_ok());
    }
}
