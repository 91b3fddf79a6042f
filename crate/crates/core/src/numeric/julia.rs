use num_complex::Complex64;

use super::cmap::ComplexMap;
use super::point::ComplexPoint;
use super::NumericError;
use crate::heights::RationalMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// Binary PGM (P5, maxval 255).
    pub fn to_pgm(&self) -> Vec<u8> {
        self.to_pgm_with_comment(None)
    }

    /// Binary PGM with an optional single-line header comment.
    pub fn to_pgm_with_comment(&self, comment: Option<&str>) -> Vec<u8> {
        let note = comment.map_or(String::new(), |c| format!("# {}\n", c.replace('\n', " ")));
        let mut out = format!("P5\n{note}{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn from_pgm(bytes: &[u8]) -> Result<GrayImage, NumericError> {
        let bad = |m: &str| NumericError::InvalidArgument(format!("malformed PGM: {m}"));
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("truncated header"));
            }
            fields.push(String::from_utf8_lossy(&bytes[start..pos]).to_string());
        }
        if fields[0] != "P5" || fields[3] != "255" {
            return Err(bad("expected P5 with maxval 255"));
        }
        let width: usize = fields[1].parse().map_err(|_| bad("width"))?;
        let height: usize = fields[2].parse().map_err(|_| bad("height"))?;
        let data = &bytes[pos + 1..];
        if data.len() != width * height {
            return Err(bad("pixel count"));
        }
        Ok(GrayImage { width, height, pixels: data.to_vec() })
    }
}

/// Square window of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JuliaView {
    pub center: Complex64,
    pub half_width: f64,
}

impl JuliaView {
    pub fn default_for(f: &RationalMap) -> JuliaView {
        let half_width = ComplexMap::new(f).escape_radius().map_or(2.0, |r| 1.05 * r);
        JuliaView { center: Complex64::new(0.0, 0.0), half_width }
    }

    fn pixel(&self, res: usize, row: usize, col: usize) -> Complex64 {
        let t = |k: usize| 2.0 * (k as f64 + 0.5) / res as f64 - 1.0;
        self.center + self.half_width * Complex64::new(t(col), -t(row))
    }
}

pub fn julia_render(f: &RationalMap, resolution: usize, iterations: usize) -> GrayImage {
    julia_render_view(f, resolution, iterations, &JuliaView::default_for(f))
}

/// Polynomials are shaded by escape time, normalized so the slowest escape in
/// the frame is white and bounded orbits are black. Rational maps are shaded
/// by a distance estimate from the largest spherical derivative of an iterate
/// along the orbit.
pub fn julia_render_view(f: &RationalMap, resolution: usize, iterations: usize, view: &JuliaView) -> GrayImage {
    let g = ComplexMap::new(f);
    let res = resolution.max(1);
    let mut pixels = vec![0u8; res * res];
    match g.escape_radius() {
        Some(r) => {
            let counts: Vec<Option<usize>> = (0..res * res)
                .map(|k| {
                    let mut z = view.pixel(res, k / res, k % res);
                    for step in 0..iterations {
                        if z.norm() > r {
                            return Some(step);
                        }
                        z = g.eval(z);
                    }
                    None
                })
                .collect();
            let top = counts.iter().flatten().copied().max().unwrap_or(0).max(1);
            for (px, c) in pixels.iter_mut().zip(&counts) {
                if let Some(c) = c {
                    *px = ((255 * c) as f64 / top as f64).round() as u8;
                }
            }
        }
        None => {
            let spacing = 2.0 * view.half_width / res as f64;
            for (k, px) in pixels.iter_mut().enumerate() {
                let mut p = ComplexPoint::from_z(view.pixel(res, k / res, k % res));
                let mut log_deriv = 0.0f64;
                let mut peak = 0.0f64;
                for _ in 0..iterations {
                    let (q, s) = g.spherical_derivative(&p);
                    log_deriv += s.max(1e-300).ln();
                    peak = peak.max(log_deriv);
                    p = q;
                    if peak > 60.0 {
                        break;
                    }
                }
                let dist = (-peak).exp();
                *px = if dist <= spacing { 255 } else { (255.0 * spacing / dist).round() as u8 };
            }
        }
    }
    GrayImage { width: res, height: res, pixels }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(c: i64) -> RationalMap {
        RationalMap::from_int_coeffs(&[c, 0, 1], &[1]).unwrap()
    }

    fn mean(img: &GrayImage, pred: impl Fn(Complex64) -> bool, view: &JuliaView) -> f64 {
        let mut s = 0.0;
        let mut n = 0.0;
        for r in 0..img.height {
            for c in 0..img.width {
                if pred(view.pixel(img.width, r, c)) {
                    s += img.get(r, c) as f64;
                    n += 1.0;
                }
            }
        }
        s / n
    }

    #[test]
    fn square_map_ring() {
        let f = quad(0);
        let view = JuliaView::default_for(&f);
        let img = julia_render(&f, 64, 100);
        let ring = mean(&img, |z| (z.norm() - 1.0).abs() < 0.1, &view);
        let rest = mean(&img, |z| (z.norm() - 1.0).abs() > 0.3, &view);
        assert!(ring > 3.0 * rest, "{ring} {rest}");
    }

    #[test]
    fn chebyshev_segment() {
        let f = quad(-2);
        let view = JuliaView::default_for(&f);
        let img = julia_render(&f, 64, 100);
        let axis = mean(&img, |z| z.im.abs() < 0.1 && z.re.abs() < 2.0, &view);
        let off = mean(&img, |z| z.im.abs() > 0.5, &view);
        assert!(axis > 3.0 * off, "{axis} {off}");
    }

    #[test]
    fn pgm_round_trip() {
        let img = julia_render(&quad(-1), 16, 50);
        assert_eq!(GrayImage::from_pgm(&img.to_pgm()).unwrap(), img);
        assert_eq!(GrayImage::from_pgm(&img.to_pgm_with_comment(Some("{\"a\": 1}"))).unwrap(), img);
    }

    #[test]
    fn rational_render_is_deterministic() {
        let f = RationalMap::from_int_coeffs(&[1, 0, 1], &[0, 2]).unwrap();
        let a = julia_render(&f, 24, 40);
        assert_eq!(a, julia_render(&f, 24, 40));
        // Newton's map for x² − 1 has the imaginary axis as its Julia set
        let view = JuliaView::default_for(&f);
        let axis = mean(&a, |z| z.re.abs() < 0.1, &view);
        let off = mean(&a, |z| z.re.abs() > 0.5, &view);
        assert!(axis > off, "{axis} {off}");
    }
}
