//! Silhouette contours and their curvature signatures.
//!
//! [`extract_contour`] runs marching squares on a binary or grayscale image
//! (using pixel centres as grid points and treating everything outside the
//! image as background) and keeps the longest closed boundary. [`signed_curvature`]
//! resamples a contour uniformly by arc length, smooths it with a circular
//! Gaussian and returns the signed curvature as a circular time series.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::TimeSeries;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SIGMA: f64 = 2.0;
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    /// Row-major pixels, `true` for foreground.
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || width * height != pixels.len() {
            return Err(Error::InvalidParameter(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::new(width, height, pixels)
    }

    /// Thresholds intensities in `[0, 1]` at `0.5`; values above are foreground.
    pub fn from_intensities(width: usize, height: usize, values: &[f64]) -> Result<Self> {
        Self::new(width, height, values.iter().map(|&v| v > 0.5).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    /// Quarter turn: pixel `(x, y)` moves to `(height - 1 - y, x)`.
    pub fn rotate90(&self) -> Self {
        let (w, h) = (self.height, self.width);
        Self::from_fn(w, h, |x, y| self.get(y, self.height - 1 - x)).expect("same pixel count")
    }

    pub fn foreground_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }
}

/// Closed polygon; the last point connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour<T> {
    pub points: Vec<(T, T)>,
}

impl<T: Real> Contour<T> {
    pub fn new(points: Vec<(T, T)>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn perimeter(&self) -> T {
        let n = self.points.len();
        (0..n)
            .map(|i| dist(self.points[i], self.points[(i + 1) % n]))
            .fold(T::zero(), |a, b| a + b)
    }

    /// Shoelace area, positive when counterclockwise in the x-right, y-up
    /// reading of the coordinates.
    pub fn signed_area(&self) -> T {
        let n = self.points.len();
        let twice = (0..n).fold(T::zero(), |acc, i| {
            let (x0, y0) = self.points[i];
            let (x1, y1) = self.points[(i + 1) % n];
            acc + x0 * y1 - x1 * y0
        });
        twice / (T::one() + T::one())
    }

    /// Same loop traversed the other way, starting from the same point.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points[1..].reverse();
        Self { points }
    }

    pub fn transformed(&self, angle: T, dx: T, dy: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            points: self
                .points
                .iter()
                .map(|&(x, y)| (c * x - s * y + dx, s * x + c * y + dy))
                .collect(),
        }
    }
}

fn dist<T: Real>(a: (T, T), b: (T, T)) -> T {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Sampled intensity field for contouring. Grid points are pixel centres;
/// everything outside the image reads as background (`0`). A point is
/// foreground when its intensity exceeds `0.5`.
pub trait Intensity {
    fn width(&self) -> usize;
    fn height(&self) -> usize;
    /// Intensity at an in-bounds pixel.
    fn intensity(&self, x: usize, y: usize) -> f64;

    fn sample(&self, x: i64, y: i64) -> f64 {
        if x >= 0 && y >= 0 && (x as usize) < self.width() && (y as usize) < self.height() {
            self.intensity(x as usize, y as usize)
        } else {
            0.0
        }
    }

    fn has_foreground(&self) -> bool {
        (0..self.height()).any(|y| (0..self.width()).any(|x| self.intensity(x, y) > LEVEL))
    }
}

const LEVEL: f64 = 0.5;

impl Intensity for BinaryImage {
    fn width(&self) -> usize {
        self.width
    }
    fn height(&self) -> usize {
        self.height
    }
    fn intensity(&self, x: usize, y: usize) -> f64 {
        if self.get(x, y) {
            1.0
        } else {
            0.0
        }
    }
}

/// Grayscale image with intensities in `[0, 1]`, e.g. an antialiased
/// silhouette. Contours pass through the `0.5` level by linear
/// interpolation along grid edges.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || width * height != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidParameter(format!("intensity at pixel {k} is outside [0, 1]")));
        }
        Ok(Self { width, height, values })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let values = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::new(width, height, values)
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn rotate90(&self) -> Self {
        Self::from_fn(self.height, self.width, |x, y| self.get(y, self.height - 1 - x)).expect("same pixel count")
    }

    pub fn threshold(&self) -> BinaryImage {
        BinaryImage::new(self.width, self.height, self.values.iter().map(|&v| v > LEVEL).collect())
            .expect("same pixel count")
    }
}

impl Intensity for GrayImage {
    fn width(&self) -> usize {
        self.width
    }
    fn height(&self) -> usize {
        self.height
    }
    fn intensity(&self, x: usize, y: usize) -> f64 {
        self.get(x, y)
    }
}

/// Crossing on a grid edge. `Horizontal(x, y)` lies between grid points
/// `(x, y)` and `(x + 1, y)`; `Vertical(x, y)` between `(x, y)` and `(x, y + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum EdgeKey {
    Horizontal(i64, i64),
    Vertical(i64, i64),
}

impl EdgeKey {
    fn point<T: Real, I: Intensity + ?Sized>(self, img: &I) -> (T, T) {
        let f = |v: i64| T::from_i64(v).expect("grid coordinate fits");
        let (x, y, nx, ny) = match self {
            EdgeKey::Horizontal(x, y) => (x, y, x + 1, y),
            EdgeKey::Vertical(x, y) => (x, y, x, y + 1),
        };
        let (a, b) = (img.sample(x, y), img.sample(nx, ny));
        let t = T::from_f64_lossy((LEVEL - a) / (b - a));
        match self {
            EdgeKey::Horizontal(..) => (f(x) + t, f(y)),
            EdgeKey::Vertical(..) => (f(x), f(y) + t),
        }
    }

    /// Twice the edge midpoint, in integers.
    fn doubled_midpoint(self) -> (i64, i64) {
        match self {
            EdgeKey::Horizontal(x, y) => (2 * x + 1, 2 * y),
            EdgeKey::Vertical(x, y) => (2 * x, 2 * y + 1),
        }
    }
}

/// Boundary segments of the cell whose top-left grid point is `(cx, cy)`.
/// Saddle cells keep the two foreground corners apart.
fn cell_segments<I: Intensity + ?Sized>(img: &I, cx: i64, cy: i64) -> Vec<(EdgeKey, EdgeKey)> {
    let fg = |x, y| img.sample(x, y) > LEVEL;
    let tl = fg(cx, cy);
    let tr = fg(cx + 1, cy);
    let br = fg(cx + 1, cy + 1);
    let bl = fg(cx, cy + 1);
    let top = EdgeKey::Horizontal(cx, cy);
    let bottom = EdgeKey::Horizontal(cx, cy + 1);
    let left = EdgeKey::Vertical(cx, cy);
    let right = EdgeKey::Vertical(cx + 1, cy);
    if tl == br && tr == bl && tl != tr {
        return if tl {
            vec![(top, left), (right, bottom)]
        } else {
            vec![(top, right), (bottom, left)]
        };
    }
    let mut crossings = Vec::with_capacity(2);
    if tl != tr {
        crossings.push(top);
    }
    if tr != br {
        crossings.push(right);
    }
    if br != bl {
        crossings.push(bottom);
    }
    if bl != tl {
        crossings.push(left);
    }
    match crossings.as_slice() {
        [a, b] => vec![(*a, *b)],
        _ => Vec::new(),
    }
}

/// Closed loops of crossing edges, in scan order of their first crossing.
fn edge_loops<I: Intensity + ?Sized>(img: &I) -> Vec<Vec<EdgeKey>> {
    let mut neighbours: HashMap<EdgeKey, Vec<EdgeKey>> = HashMap::new();
    let mut order: Vec<EdgeKey> = Vec::new();
    for cy in -1..img.height() as i64 {
        for cx in -1..img.width() as i64 {
            for (a, b) in cell_segments(img, cx, cy) {
                for (p, q) in [(a, b), (b, a)] {
                    let entry = neighbours.entry(p).or_insert_with(|| {
                        order.push(p);
                        Vec::new()
                    });
                    entry.push(q);
                }
            }
        }
    }
    let mut visited: HashSet<EdgeKey> = HashSet::with_capacity(neighbours.len());
    let mut loops = Vec::new();
    for &start in &order {
        if !visited.insert(start) {
            continue;
        }
        let mut keys = vec![start];
        let mut prev = start;
        let mut cur = neighbours[&start][0];
        while cur != start {
            visited.insert(cur);
            keys.push(cur);
            let nb = &neighbours[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        loops.push(keys);
    }
    loops
}

/// All closed boundary loops, in scan order of their first crossing.
pub fn extract_loops<T: Real>(img: &(impl Intensity + ?Sized)) -> Vec<Contour<T>> {
    edge_loops(img)
        .into_iter()
        .map(|keys| Contour::new(keys.into_iter().map(|k| k.point(img)).collect()))
        .collect()
}

/// Start of the lexicographically largest rotation of `s`.
fn max_rotation<V: Ord>(s: &[V]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (&s[(i + k) % n], &s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a < b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Rotation of a loop that depends only on its shape: the vertex sequence
/// whose squared distances from the centroid (exact, on the integer edge
/// midpoints) are lexicographically largest.
fn canonical_start(keys: &[EdgeKey]) -> usize {
    let n = keys.len() as i128;
    let pts: Vec<(i64, i64)> = keys.iter().map(|k| k.doubled_midpoint()).collect();
    let sx: i128 = pts.iter().map(|p| p.0 as i128).sum();
    let sy: i128 = pts.iter().map(|p| p.1 as i128).sum();
    let d: Vec<i128> = pts
        .iter()
        .map(|&(x, y)| {
            let (dx, dy) = (n * x as i128 - sx, n * y as i128 - sy);
            dx * dx + dy * dy
        })
        .collect();
    max_rotation(&d)
}

/// Longest boundary loop between foreground and background, oriented
/// counterclockwise (positive [`Contour::signed_area`]).
///
/// The first vertex is chosen from the loop's geometry alone, so images that
/// differ by a quarter turn or a translation on the pixel grid give contours
/// that differ by exactly that motion, vertex for vertex.
pub fn extract_contour<T: Real>(img: &(impl Intensity + ?Sized)) -> Result<Contour<T>> {
    if !img.has_foreground() {
        return Err(Error::Degenerate("image has no foreground"));
    }
    let mut best: Option<(T, Vec<EdgeKey>, Contour<T>)> = None;
    for keys in edge_loops(img) {
        let c = Contour::new(keys.iter().map(|k| k.point(img)).collect());
        let len = c.perimeter();
        if best.as_ref().is_none_or(|(b, _, _)| len > *b) {
            best = Some((len, keys, c));
        }
    }
    let (_, mut keys, contour) = best.ok_or(Error::Degenerate("no boundary found"))?;
    let mut points = contour.points;
    if Contour::new(points.clone()).signed_area() < T::zero() {
        keys.reverse();
        points.reverse();
    }
    let start = canonical_start(&keys);
    points.rotate_left(start);
    Ok(Contour::new(points))
}

/// `n` points spaced exactly `perimeter / n` apart along the polygon,
/// starting at its first vertex.
pub fn resample_uniform<T: Real>(contour: &Contour<T>, n: usize) -> Result<Contour<T>> {
    let pts = &contour.points;
    if pts.len() < 2 {
        return Err(Error::Degenerate("contour needs at least two points"));
    }
    let total = contour.perimeter();
    if !(total > T::zero()) {
        return Err(Error::Degenerate("contour has zero length"));
    }
    let step = total / T::from_usize(n).expect("sample count fits");
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    let mut seg_start = T::zero();
    let mut seg_len = dist(pts[0], pts[1 % pts.len()]);
    for m in 0..n {
        let target = step * T::from_usize(m).expect("index fits");
        while seg + 1 < pts.len() && seg_start + seg_len < target {
            seg_start = seg_start + seg_len;
            seg += 1;
            seg_len = dist(pts[seg], pts[(seg + 1) % pts.len()]);
        }
        let a = pts[seg];
        let b = pts[(seg + 1) % pts.len()];
        let t = if seg_len > T::zero() {
            ((target - seg_start) / seg_len).min(T::one())
        } else {
            T::zero()
        };
        out.push((a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t));
    }
    Ok(Contour::new(out))
}

/// Circular convolution with a normalised Gaussian of standard deviation
/// `sigma` samples, truncated at four standard deviations.
pub fn gaussian_smooth<T: Real>(values: &[T], sigma: T) -> Vec<T> {
    let n = values.len() as i64;
    let radius = (sigma * T::from_f64_lossy(4.0)).ceil().to_i64().unwrap_or(0).max(1);
    let two_var = sigma * sigma * T::from_f64_lossy(2.0);
    let weights: Vec<T> = (-radius..=radius)
        .map(|k| {
            let k = T::from_i64(k).expect("kernel offset fits");
            (-(k * k) / two_var).exp()
        })
        .collect();
    let norm: T = weights.iter().copied().sum();
    (0..n)
        .map(|i| {
            weights
                .iter()
                .zip(-radius..=radius)
                .map(|(&w, k)| w * values[(i + k).rem_euclid(n) as usize])
                .fold(T::zero(), |a, b| a + b)
                / norm
        })
        .collect()
}

/// Smoothed signed curvature `(x'y'' - y'x'') / (x'^2 + y'^2)^(3/2)` of a
/// closed contour, sampled at `n_samples` points evenly spaced in arc length.
pub fn signed_curvature<T: Real>(contour: &Contour<T>, sigma: T, n_samples: usize) -> Result<TimeSeries<T>> {
    if !(sigma > T::zero()) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma:?}")));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    let resampled = resample_uniform(contour, n_samples)?;
    let xs: Vec<T> = resampled.points.iter().map(|p| p.0).collect();
    let ys: Vec<T> = resampled.points.iter().map(|p| p.1).collect();
    let xs = gaussian_smooth(&xs, sigma);
    let ys = gaussian_smooth(&ys, sigma);
    let n = n_samples;
    let two = T::one() + T::one();
    let mut kappa = Vec::with_capacity(n);
    for i in 0..n {
        let (p, q) = ((i + n - 1) % n, (i + 1) % n);
        let dx = (xs[q] - xs[p]) / two;
        let dy = (ys[q] - ys[p]) / two;
        let ddx = xs[q] - two * xs[i] + xs[p];
        let ddy = ys[q] - two * ys[i] + ys[p];
        let speed2 = dx * dx + dy * dy;
        if !(speed2 > T::zero()) {
            return Err(Error::Degenerate("contour collapses after smoothing"));
        }
        kappa.push((dx * ddy - dy * ddx) / (speed2 * speed2.sqrt()));
    }
    TimeSeries::circle(kappa)
}

/// Curvature series of the main contour of an image.
pub fn image_curvature<T: Real>(img: &(impl Intensity + ?Sized), sigma: T, n_samples: usize) -> Result<TimeSeries<T>> {
    signed_curvature(&extract_contour::<T>(img)?, sigma, n_samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(size: usize, cx: f64, cy: f64, r: f64) -> BinaryImage {
        BinaryImage::from_fn(size, size, |x, y| {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            dx * dx + dy * dy <= r * r
        })
        .unwrap()
    }

    #[test]
    fn single_pixel_diamond() {
        let img = BinaryImage::from_fn(3, 3, |x, y| x == 1 && y == 1).unwrap();
        let c = extract_contour::<f64>(&img).unwrap();
        let mut pts = c.points.clone();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pts, vec![(0.5, 1.0), (1.0, 0.5), (1.0, 1.5), (1.5, 1.0)]);
        assert!(c.signed_area() > 0.0);
        assert_eq!(c.signed_area(), 0.5);
    }

    #[test]
    fn full_image_hugs_the_border() {
        let img = BinaryImage::from_fn(4, 3, |_, _| true).unwrap();
        let c = extract_contour::<f64>(&img).unwrap();
        // one crossing per border pixel side
        assert_eq!(c.len(), 2 * (4 + 3));
        for &(x, y) in &c.points {
            let on_vertical = (x == -0.5 || x == 3.5) && (0.0..=2.0).contains(&y);
            let on_horizontal = (y == -0.5 || y == 2.5) && (0.0..=3.0).contains(&x);
            assert!(on_vertical || on_horizontal, "({x}, {y})");
        }
    }

    #[test]
    fn picks_the_larger_blob() {
        let img = BinaryImage::from_fn(12, 6, |x, y| (x == 1 && y == 1) || ((5..10).contains(&x) && (1..5).contains(&y)))
            .unwrap();
        let c = extract_contour::<f64>(&img).unwrap();
        assert!(c.points.iter().all(|&(x, _)| x > 4.0));
        assert_eq!(extract_loops::<f64>(&img).len(), 2);
    }

    #[test]
    fn diagonal_pixels_stay_separate() {
        let img = BinaryImage::from_fn(2, 2, |x, y| x == y).unwrap();
        assert_eq!(extract_loops::<f64>(&img).len(), 2);
    }

    #[test]
    fn quarter_turn_moves_every_vertex() {
        let img = BinaryImage::from_fn(13, 9, |x, y| (x + 2 * y) % 7 < 4 && x > 1 && y > 0 && x + y < 17).unwrap();
        let a = extract_contour::<f64>(&img).unwrap();
        let b = extract_contour::<f64>(&img.rotate90()).unwrap();
        let h = img.height() as f64;
        let rotated: Vec<(f64, f64)> = a.points.iter().map(|&(x, y)| (h - 1.0 - y, x)).collect();
        assert_eq!(b.points, rotated);
    }

    #[test]
    fn max_rotation_picks_largest() {
        assert_eq!(max_rotation(&[1, 3, 2, 3, 0]), 1);
        assert_eq!(max_rotation(&[1, 3, 0, 3, 2]), 3);
        assert_eq!(max_rotation(&[2, 2, 2]), 0);
        assert_eq!(max_rotation(&[1, 2, 1, 2]), 1);
    }

    #[test]
    fn gray_levels_interpolate() {
        let g = GrayImage::new(3, 1, vec![0.0, 1.0, 0.75]).unwrap();
        let c = extract_contour::<f64>(&g).unwrap();
        assert!(c.points.contains(&(0.5, 0.0)));
        assert!(c.points.contains(&(2.0 + 0.25 / 0.75, 0.0)));
        let binary = GrayImage::from_fn(5, 4, |x, y| if x * y % 3 == 1 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(
            extract_contour::<f64>(&binary).unwrap(),
            extract_contour::<f64>(&binary.threshold()).unwrap()
        );
        assert!(GrayImage::new(1, 1, vec![1.5]).is_err());
    }

    #[test]
    fn empty_image_is_an_error() {
        let img = BinaryImage::from_fn(3, 3, |_, _| false).unwrap();
        assert!(extract_contour::<f64>(&img).is_err());
        assert!(BinaryImage::new(2, 2, vec![true; 3]).is_err());
    }

    #[test]
    fn rotate90_maps_pixels() {
        let img = BinaryImage::from_fn(3, 2, |x, y| x == 2 && y == 0).unwrap();
        let r = img.rotate90();
        assert_eq!((r.width(), r.height()), (2, 3));
        assert!(r.get(1, 2));
        assert_eq!(r.foreground_count(), 1);
    }

    fn analytic_circle(r: f64, n: usize) -> Contour<f64> {
        Contour::new(
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / n as f64;
                    (10.0 + r * t.cos(), -3.0 + r * t.sin())
                })
                .collect(),
        )
    }

    #[test]
    fn circle_curvature_is_inverse_radius() {
        for r in [20.0, 35.0, 80.0] {
            let k = signed_curvature(&analytic_circle(r, 2000), 2.0, 200).unwrap();
            for &v in k.values() {
                assert!((v * r - 1.0).abs() < 0.02, "r={r} kappa={v}");
            }
        }
    }

    #[test]
    fn reversal_negates_curvature() {
        let c = extract_contour::<f64>(&disc(40, 18.3, 20.1, 12.0)).unwrap();
        let k = signed_curvature(&c, 2.0, 64).unwrap();
        let kr = signed_curvature(&c.reversed(), 2.0, 64).unwrap();
        let n = k.len();
        for m in 0..n {
            assert!((kr.values()[m] + k.values()[(n - m) % n]).abs() < 1e-9);
        }
    }

    #[test]
    fn rigid_motion_invariance() {
        let c = extract_contour::<f64>(&disc(40, 20.0, 19.0, 11.0)).unwrap();
        let moved = c.transformed(0.7, 13.5, -4.25);
        let a = signed_curvature(&c, 2.0, 100).unwrap();
        let b = signed_curvature(&moved, 2.0, 100).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn resampling_is_uniform_in_arc_length() {
        let c = extract_contour::<f64>(&disc(30, 14.0, 15.0, 9.5)).unwrap();
        let n = 50;
        let r = resample_uniform(&c, n).unwrap();
        let step = c.perimeter() / n as f64;
        // arc length of each sample along the source polygon
        let arc = |p: (f64, f64)| -> f64 {
            let mut acc = 0.0;
            for i in 0..c.len() {
                let a = c.points[i];
                let b = c.points[(i + 1) % c.len()];
                let seg = dist(a, b);
                let along = dist(a, p);
                let rest = dist(p, b);
                if (along + rest - seg).abs() < 1e-12 {
                    return acc + along;
                }
                acc += seg;
            }
            panic!("point not on contour");
        };
        let s: Vec<f64> = r.points.iter().map(|&p| arc(p)).collect();
        for m in 1..n {
            assert!((s[m] - s[m - 1] - step).abs() < 1e-9);
        }
    }

    #[test]
    fn parameter_checks() {
        let c = analytic_circle(10.0, 100);
        assert!(signed_curvature(&c, 2.0, 7).is_err());
        assert!(signed_curvature(&c, 2.0, 8).is_ok());
        assert!(signed_curvature(&c, 0.0, 64).is_err());
        let point = Contour::new(vec![(1.0, 1.0); 4]);
        assert!(signed_curvature(&point, 1.0, 16).is_err());
    }
}
