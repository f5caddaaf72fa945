//! Threshold binarization and exact Euclidean distance transform.
//!
//! Distances are kept as exact squared integers; square roots are taken only
//! when a distance map is quantized back to 8 bits.

use crate::imageio::GrayImage;

/// Boolean mask, `true` = foreground.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl BinaryImage {
    /// Panics if `mask.len() != width * height`.
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Self {
        assert_eq!(mask.len(), width * height, "mask length must equal width * height");
        BinaryImage { width, height, mask }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                mask.push(f(x, y));
            }
        }
        Self::new(width, height, mask)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.mask[y * self.width + x]
    }

    pub fn foreground_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn transpose(&self) -> BinaryImage {
        BinaryImage::from_fn(self.height, self.width, |x, y| self.get(y, x))
    }

    pub fn flip_horizontal(&self) -> BinaryImage {
        BinaryImage::from_fn(self.width, self.height, |x, y| self.get(self.width - 1 - x, y))
    }
}

/// Exact squared Euclidean distances to the nearest foreground pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    width: usize,
    height: usize,
    sq_dist: Vec<u64>,
    foreground_empty: bool,
}

impl DistanceMap {
    fn empty(width: usize, height: usize) -> Self {
        DistanceMap {
            width,
            height,
            sq_dist: vec![0; width * height],
            foreground_empty: true,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn sq_dist(&self) -> &[u64] {
        &self.sq_dist
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.sq_dist[y * self.width + x]
    }

    /// True when the mask had no foreground; the map is then all zeros.
    pub fn foreground_empty(&self) -> bool {
        self.foreground_empty
    }

    /// Real-valued distance at `(x, y)`.
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        (self.get(x, y) as f64).sqrt()
    }

    /// Real-valued distances, row-major.
    pub fn distances(&self) -> Vec<f64> {
        self.sq_dist.iter().map(|&d| (d as f64).sqrt()).collect()
    }

    pub fn max_sq_dist(&self) -> u64 {
        self.sq_dist.iter().copied().max().unwrap_or(0)
    }

    pub fn transpose(&self) -> DistanceMap {
        let mut sq_dist = Vec::with_capacity(self.sq_dist.len());
        for y in 0..self.width {
            for x in 0..self.height {
                sq_dist.push(self.get(y, x));
            }
        }
        DistanceMap {
            width: self.height,
            height: self.width,
            sq_dist,
            foreground_empty: self.foreground_empty,
        }
    }

    pub fn flip_horizontal(&self) -> DistanceMap {
        let mut out = self.clone();
        for row in out.sq_dist.chunks_exact_mut(self.width) {
            row.reverse();
        }
        out
    }
}

/// Foreground where `pixel <= threshold`.
pub fn binarize(img: &GrayImage, threshold: u8) -> BinaryImage {
    BinaryImage {
        width: img.width(),
        height: img.height(),
        mask: img.pixels().iter().map(|&v| v <= threshold).collect(),
    }
}

/// Exact EDT in O(width * height).
///
/// A vertical pass finds the distance to the nearest foreground pixel in the
/// same column; a pass along each row then takes the lower envelope of the
/// parabolas `(x - x')^2 + g(x')^2` (Meijster's separable scheme, all in
/// integers). Both passes walk memory in row order.
pub fn edt_exact(bin: &BinaryImage) -> DistanceMap {
    let (w, h) = (bin.width, bin.height);
    if !bin.mask.contains(&true) {
        return DistanceMap::empty(w, h);
    }
    // Larger than any real distance; a column without foreground stays at `inf`.
    let inf = u32::try_from(w + h).expect("image side fits in u32");

    let mut vert = vec![inf; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if bin.mask[i] {
                vert[i] = 0;
            } else if y > 0 {
                vert[i] = (vert[i - w] + 1).min(inf);
            }
        }
    }
    for y in (0..h.saturating_sub(1)).rev() {
        for x in 0..w {
            let i = y * w + x;
            vert[i] = vert[i].min(vert[i + w] + 1);
        }
    }

    let mut sq_dist = vec![0u64; w * h];
    let mut scratch = EnvelopeScratch::new(w);
    for (row, out) in vert.chunks_exact(w).zip(sq_dist.chunks_exact_mut(w)) {
        lower_envelope(row, out, &mut scratch);
    }
    DistanceMap {
        width: w,
        height: h,
        sq_dist,
        foreground_empty: false,
    }
}

struct EnvelopeScratch {
    /// Parabola apex positions on the envelope.
    apex: Vec<usize>,
    /// Start of each parabola's region of dominance.
    start: Vec<i64>,
}

impl EnvelopeScratch {
    fn new(len: usize) -> Self {
        EnvelopeScratch {
            apex: vec![0; len],
            start: vec![0; len],
        }
    }
}

/// out[u] = min_i (u - i)^2 + g[i]^2
fn lower_envelope(g: &[u32], out: &mut [u64], scratch: &mut EnvelopeScratch) {
    let m = g.len();
    let g2 = |i: usize| (g[i] as i64) * (g[i] as i64);
    let f = |u: i64, i: usize| (u - i as i64).pow(2) + g2(i);
    // First u at which parabola `u` is no worse than parabola `i` (i < u), minus one.
    let sep = |i: usize, u: usize| {
        let (ii, uu) = (i as i64, u as i64);
        (uu * uu - ii * ii + g2(u) - g2(i)).div_euclid(2 * (uu - ii))
    };
    let EnvelopeScratch { apex, start } = scratch;
    let mut q: isize = 0;
    apex[0] = 0;
    start[0] = 0;
    for u in 1..m {
        while q >= 0 && f(start[q as usize], apex[q as usize]) > f(start[q as usize], u) {
            q -= 1;
        }
        if q < 0 {
            q = 0;
            apex[0] = u;
        } else {
            let w = 1 + sep(apex[q as usize], u);
            if w < m as i64 {
                q += 1;
                apex[q as usize] = u;
                start[q as usize] = w;
            }
        }
    }
    for u in (0..m).rev() {
        out[u] = f(u as i64, apex[q as usize]) as u64;
        if u as i64 == start[q as usize] {
            q -= 1;
        }
    }
}

/// Literal O(n * |F|) evaluation of the distance transform; the reference
/// that [`edt_exact`] is checked against. Intended for small images.
pub fn edt_bruteforce(bin: &BinaryImage) -> DistanceMap {
    let (w, h) = (bin.width, bin.height);
    let foreground: Vec<(i64, i64)> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .filter(|&(x, y)| bin.get(x, y))
        .map(|(x, y)| (x as i64, y as i64))
        .collect();
    if foreground.is_empty() {
        return DistanceMap::empty(w, h);
    }
    let mut sq_dist = Vec::with_capacity(w * h);
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let best = foreground
                .iter()
                .map(|&(fx, fy)| (x - fx).pow(2) + (y - fy).pow(2))
                .min()
                .expect("nonempty foreground");
            sq_dist.push(best as u64);
        }
    }
    DistanceMap {
        width: w,
        height: h,
        sq_dist,
        foreground_empty: false,
    }
}

/// Linear rescale of real distances to `[0, 255]`, `round(255 * d / d_max)`.
///
/// Maps with `d_max == 0` (full or empty foreground) become all zeros.
pub fn quantize_distance(dm: &DistanceMap) -> GrayImage {
    let max_sq = dm.max_sq_dist();
    let pixels = if max_sq == 0 {
        vec![0; dm.sq_dist.len()]
    } else {
        let d_max = (max_sq as f64).sqrt();
        dm.sq_dist
            .iter()
            .map(|&sq| (255.0 * (sq as f64).sqrt() / d_max).round().min(255.0) as u8)
            .collect()
    };
    GrayImage::new(dm.width, dm.height, pixels).expect("distance map dimensions are valid")
}

/// binarize → EDT → quantize, the distance image for threshold `i`.
pub fn distance_image(img: &GrayImage, threshold: u8) -> GrayImage {
    quantize_distance(&edt_exact(&binarize(img, threshold)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mask_from_rows(rows: &[&[u8]]) -> BinaryImage {
        let w = rows[0].len();
        BinaryImage::new(
            w,
            rows.len(),
            rows.iter().flat_map(|r| r.iter().map(|&v| v != 0)).collect(),
        )
    }

    #[test]
    fn binarize_rule() {
        let img = GrayImage::new(2, 2, vec![5, 10, 200, 1]).unwrap();
        assert_eq!(binarize(&img, 10).mask(), &[true, true, false, true]);
        assert!(binarize(&img, 255).mask().iter().all(|&m| m));
        let bright = GrayImage::new(2, 1, vec![12, 40]).unwrap();
        assert_eq!(binarize(&bright, 5).foreground_count(), 0);
    }

    #[test]
    fn edt_full_foreground_is_zero() {
        let bin = BinaryImage::new(4, 3, vec![true; 12]);
        let dm = edt_exact(&bin);
        assert!(!dm.foreground_empty());
        assert!(dm.sq_dist().iter().all(|&d| d == 0));
    }

    #[test]
    fn edt_one_dimensional() {
        let bin = mask_from_rows(&[&[1, 0, 0, 0, 1]]);
        assert_eq!(edt_exact(&bin).sq_dist(), &[0, 1, 4, 1, 0]);
        assert_eq!(edt_bruteforce(&bin).sq_dist(), &[0, 1, 4, 1, 0]);
    }

    #[test]
    fn edt_center_pixel() {
        let bin = BinaryImage::from_fn(5, 5, |x, y| x == 2 && y == 2);
        for dm in [edt_exact(&bin), edt_bruteforce(&bin)] {
            assert_eq!(dm.get(0, 0), 8);
            assert_eq!(dm.get(4, 4), 8);
            assert_eq!(dm.get(2, 0), 4);
        }
    }

    #[test]
    fn edt_top_row() {
        let bin = BinaryImage::from_fn(3, 3, |_, y| y == 0);
        let expected = [0, 0, 0, 1, 1, 1, 4, 4, 4];
        assert_eq!(edt_bruteforce(&bin).sq_dist(), &expected);
        assert_eq!(edt_exact(&bin).sq_dist(), &expected);
    }

    #[test]
    fn edt_empty_foreground_convention() {
        let bin = BinaryImage::new(3, 2, vec![false; 6]);
        for dm in [edt_exact(&bin), edt_bruteforce(&bin)] {
            assert!(dm.foreground_empty());
            assert!(dm.sq_dist().iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn edt_single_column_and_single_pixel() {
        let bin = mask_from_rows(&[&[0], &[0], &[1], &[0]]);
        assert_eq!(edt_exact(&bin).sq_dist(), &[4, 1, 0, 1]);
        let one = BinaryImage::new(1, 1, vec![true]);
        assert_eq!(edt_exact(&one).sq_dist(), &[0]);
    }

    #[test]
    fn quantize_examples() {
        let dm = DistanceMap {
            width: 3,
            height: 1,
            sq_dist: vec![0, 4, 16],
            foreground_empty: false,
        };
        assert_eq!(quantize_distance(&dm).pixels(), &[0, 128, 255]);
        let flat = edt_exact(&BinaryImage::new(2, 2, vec![true; 4]));
        assert_eq!(quantize_distance(&flat).pixels(), &[0; 4]);
        let empty = edt_exact(&BinaryImage::new(2, 2, vec![false; 4]));
        assert_eq!(quantize_distance(&empty).pixels(), &[0; 4]);
    }

    fn arb_mask() -> impl Strategy<Value = BinaryImage> {
        (1usize..=20, 1usize..=20, 0.0f64..1.0).prop_flat_map(|(w, h, density)| {
            proptest::collection::vec(proptest::bool::weighted(density.clamp(0.01, 0.99)), w * h)
                .prop_map(move |mask| BinaryImage::new(w, h, mask))
        })
    }

    proptest! {
        #[test]
        fn exact_matches_bruteforce(bin in arb_mask()) {
            prop_assert_eq!(edt_exact(&bin), edt_bruteforce(&bin));
        }

        #[test]
        fn zero_set_and_bound(bin in arb_mask()) {
            let dm = edt_exact(&bin);
            let (w, h) = (bin.width() as u64, bin.height() as u64);
            let bound = (w - 1).pow(2) + (h - 1).pow(2);
            for (&d, &m) in dm.sq_dist().iter().zip(bin.mask()) {
                prop_assert!(d <= bound);
                if !dm.foreground_empty() {
                    prop_assert_eq!(d == 0, m);
                }
            }
        }

        #[test]
        fn isometries(bin in arb_mask()) {
            let dm = edt_exact(&bin);
            prop_assert_eq!(edt_exact(&bin.transpose()), dm.transpose());
            prop_assert_eq!(edt_exact(&bin.flip_horizontal()), dm.flip_horizontal());
        }

        #[test]
        fn threshold_monotonicity(pixels in proptest::collection::vec(any::<u8>(), 64), i in 0u8..255) {
            let img = GrayImage::new(8, 8, pixels).unwrap();
            let (lo, hi) = (binarize(&img, i), binarize(&img, i + 1));
            for (&a, &b) in lo.mask().iter().zip(hi.mask()) {
                prop_assert!(!a || b);
            }
            let (dlo, dhi) = (edt_exact(&lo), edt_exact(&hi));
            if !dlo.foreground_empty() && !dhi.foreground_empty() {
                for (&a, &b) in dlo.sq_dist().iter().zip(dhi.sq_dist()) {
                    prop_assert!(b <= a);
                }
            }
        }
    }
}
