//! Software RGB canvas with the drawing primitives the chart painters
//! need, pixel-extent tracking for bounding boxes, and PNG I/O.

use super::font;
use serde::{Deserialize, Serialize};

pub type Color = [u8; 3];

/// Axis-aligned pixel rectangle (x, y top-left; w, h in pixels).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl Rect {
    pub fn contains(&self, other: &Rect) -> bool {
        other.x >= self.x
            && other.y >= self.y
            && other.x + other.w <= self.x + self.w
            && other.y + other.h <= self.y + self.h
    }

    pub fn center(&self) -> (i64, i64) {
        (self.x as i64 + self.w as i64 / 2, self.y as i64 + self.h as i64 / 2)
    }
}

/// Inclusive pixel extents accumulated while drawing one element.
#[derive(Debug, Clone, Copy)]
struct Extent {
    min_x: i64,
    min_y: i64,
    max_x: i64,
    max_y: i64,
}

impl Extent {
    fn new() -> Self {
        Extent { min_x: i64::MAX, min_y: i64::MAX, max_x: i64::MIN, max_y: i64::MIN }
    }

    fn add(&mut self, x: i64, y: i64) {
        self.min_x = self.min_x.min(x);
        self.min_y = self.min_y.min(y);
        self.max_x = self.max_x.max(x);
        self.max_y = self.max_y.max(y);
    }

    fn rect(&self) -> Option<Rect> {
        if self.min_x > self.max_x {
            return None;
        }
        Some(Rect {
            x: self.min_x as u32,
            y: self.min_y as u32,
            w: (self.max_x - self.min_x + 1) as u32,
            h: (self.max_y - self.min_y + 1) as u32,
        })
    }
}

pub struct Canvas {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    tracker: Option<Extent>,
}

/// Line dash patterns, in on/off pixel runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dash {
    Solid,
    Dashed,
    Dotted,
    DashDot,
}

impl Dash {
    fn pattern(self) -> &'static [u32] {
        match self {
            Dash::Solid => &[1, 0],
            Dash::Dashed => &[6, 4],
            Dash::Dotted => &[2, 3],
            Dash::DashDot => &[7, 3, 2, 3],
        }
    }

    fn on_at(self, step: u32) -> bool {
        let pattern = self.pattern();
        let total: u32 = pattern.iter().sum();
        if total == 0 {
            return true;
        }
        let mut pos = step % total;
        for (i, run) in pattern.iter().enumerate() {
            if pos < *run {
                return i % 2 == 0;
            }
            pos -= run;
        }
        true
    }
}

impl Canvas {
    pub fn new(width: u32, height: u32, background: Color) -> Self {
        let mut pixels = vec![0u8; (width * height * 3) as usize];
        for chunk in pixels.chunks_exact_mut(3) {
            chunk.copy_from_slice(&background);
        }
        Canvas { width, height, pixels, tracker: None }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Starts accumulating the extent of every pixel drawn until
    /// [`Canvas::take_extent`]; used to record element bounding boxes.
    pub fn begin_track(&mut self) {
        self.tracker = Some(Extent::new());
    }

    /// Stops tracking and returns the tight bounding rectangle, if any
    /// pixel landed on the canvas.
    pub fn take_extent(&mut self) -> Option<Rect> {
        self.tracker.take().and_then(|e| e.rect())
    }

    pub fn put(&mut self, x: i64, y: i64, color: Color) {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return;
        }
        let idx = ((y as u32 * self.width + x as u32) * 3) as usize;
        self.pixels[idx..idx + 3].copy_from_slice(&color);
        if let Some(t) = self.tracker.as_mut() {
            t.add(x, y);
        }
    }

    pub fn fill_rect(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, color: Color) {
        let (x0, x1) = (x0.min(x1), x0.max(x1));
        let (y0, y1) = (y0.min(y1), y0.max(y1));
        for y in y0..=y1 {
            for x in x0..=x1 {
                self.put(x, y, color);
            }
        }
    }

    pub fn rect_outline(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, stroke: u32, color: Color) {
        let s = stroke as i64 - 1;
        self.fill_rect(x0, y0, x1, y0 + s, color);
        self.fill_rect(x0, y1 - s, x1, y1, color);
        self.fill_rect(x0, y0, x0 + s, y1, color);
        self.fill_rect(x1 - s, y0, x1, y1, color);
    }

    /// Bresenham line with a square pen of the given width.
    pub fn line(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, width: u32, color: Color) {
        self.line_dashed(x0, y0, x1, y1, width, color, Dash::Solid);
    }

    pub fn line_dashed(
        &mut self,
        x0: i64,
        y0: i64,
        x1: i64,
        y1: i64,
        width: u32,
        color: Color,
        dash: Dash,
    ) {
        let dx = (x1 - x0).abs();
        let dy = -(y1 - y0).abs();
        let sx = if x0 < x1 { 1 } else { -1 };
        let sy = if y0 < y1 { 1 } else { -1 };
        let mut err = dx + dy;
        let (mut x, mut y) = (x0, y0);
        let half = width as i64 / 2;
        let mut step = 0u32;
        loop {
            if dash.on_at(step) {
                for oy in -half..=(width as i64 - 1 - half) {
                    for ox in -half..=(width as i64 - 1 - half) {
                        self.put(x + ox, y + oy, color);
                    }
                }
            }
            if x == x1 && y == y1 {
                break;
            }
            step += 1;
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }

    pub fn fill_circle(&mut self, cx: i64, cy: i64, r: i64, color: Color) {
        for y in -r..=r {
            for x in -r..=r {
                if x * x + y * y <= r * r {
                    self.put(cx + x, cy + y, color);
                }
            }
        }
    }

    pub fn circle_outline(&mut self, cx: i64, cy: i64, r: i64, stroke: u32, color: Color) {
        let inner = (r - stroke as i64).max(0);
        for y in -r..=r {
            for x in -r..=r {
                let d2 = x * x + y * y;
                if d2 <= r * r && d2 > inner * inner {
                    self.put(cx + x, cy + y, color);
                }
            }
        }
    }

    /// Even-odd scanline polygon fill.
    pub fn fill_polygon(&mut self, points: &[(i64, i64)], color: Color) {
        if points.len() < 3 {
            return;
        }
        let min_y = points.iter().map(|p| p.1).min().unwrap();
        let max_y = points.iter().map(|p| p.1).max().unwrap();
        for y in min_y..=max_y {
            let mut xs: Vec<i64> = Vec::new();
            let n = points.len();
            for i in 0..n {
                let (x0, y0) = points[i];
                let (x1, y1) = points[(i + 1) % n];
                if (y0 <= y && y1 > y) || (y1 <= y && y0 > y) {
                    let t = (y - y0) as f64 / (y1 - y0) as f64;
                    xs.push(x0 + (t * (x1 - x0) as f64).round() as i64);
                }
            }
            xs.sort_unstable();
            for pair in xs.chunks_exact(2) {
                for x in pair[0]..=pair[1] {
                    self.put(x, y, color);
                }
            }
        }
    }

    /// Filled circular sector between angles `a0` and `a1` (radians,
    /// increasing clockwise on screen, `a1 > a0`).
    pub fn fill_wedge(&mut self, cx: i64, cy: i64, r: i64, a0: f64, a1: f64, color: Color) {
        let span = a1 - a0;
        for y in -r..=r {
            for x in -r..=r {
                if x * x + y * y > r * r {
                    continue;
                }
                let mut angle = (y as f64).atan2(x as f64);
                let mut rel = angle - a0;
                while rel < 0.0 {
                    rel += std::f64::consts::TAU;
                    angle += std::f64::consts::TAU;
                }
                let _ = angle;
                if rel < span {
                    self.put(cx + x, cy + y, color);
                }
            }
        }
    }

    /// Draws text with the embedded font at an integer scale; `bold`
    /// overstrikes one pixel to the right. (x, y) is the top-left corner.
    pub fn text(&mut self, x: i64, y: i64, text: &str, scale: u32, color: Color, bold: bool) {
        let mut pen_x = x;
        let s = scale as i64;
        for c in text.chars() {
            let columns = font::glyph(c);
            for (cx, col_bits) in columns.iter().enumerate() {
                for row in 0..font::GLYPH_H as i64 {
                    if col_bits >> row & 1 == 1 {
                        let px = pen_x + cx as i64 * s;
                        let py = y + row * s;
                        self.fill_rect(px, py, px + s - 1, py + s - 1, color);
                        if bold {
                            self.fill_rect(px + 1, py, px + s, py + s - 1, color);
                        }
                    }
                }
            }
            pen_x += font::ADVANCE as i64 * s;
        }
    }

    /// Encodes the canvas as a PNG with fixed settings; byte-identical
    /// output for identical pixel content.
    pub fn to_png(&self) -> Vec<u8> {
        let mut out = Vec::new();
        {
            let mut encoder = png::Encoder::new(&mut out, self.width, self.height);
            encoder.set_color(png::ColorType::Rgb);
            encoder.set_depth(png::BitDepth::Eight);
            encoder.set_compression(png::Compression::Balanced);
            let mut writer = encoder.write_header().expect("png header");
            writer.write_image_data(&self.pixels).expect("png body");
        }
        out
    }

    /// Decodes a PNG produced by [`Canvas::to_png`] back into a canvas.
    pub fn from_png(bytes: &[u8]) -> Result<Canvas, String> {
        let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
        let mut reader = decoder.read_info().map_err(|e| e.to_string())?;
        let mut buf = vec![0u8; reader.output_buffer_size().ok_or("png too large")?];
        let info = reader.next_frame(&mut buf).map_err(|e| e.to_string())?;
        if info.color_type != png::ColorType::Rgb || info.bit_depth != png::BitDepth::Eight {
            return Err("expected 8-bit RGB".to_string());
        }
        buf.truncate(info.buffer_size());
        Ok(Canvas { width: info.width, height: info.height, pixels: buf, tracker: None })
    }

    #[cfg(test)]
    pub fn pixel(&self, x: u32, y: u32) -> Color {
        let idx = ((y * self.width + x) * 3) as usize;
        [self.pixels[idx], self.pixels[idx + 1], self.pixels[idx + 2]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BLACK: Color = [0, 0, 0];
    const WHITE: Color = [255, 255, 255];

    #[test]
    fn tracking_captures_tight_extent() {
        let mut c = Canvas::new(50, 50, WHITE);
        c.begin_track();
        c.fill_rect(10, 12, 19, 30, BLACK);
        let r = c.take_extent().unwrap();
        assert_eq!(r, Rect { x: 10, y: 12, w: 10, h: 19 });
    }

    #[test]
    fn tracking_ignores_clipped_pixels() {
        let mut c = Canvas::new(20, 20, WHITE);
        c.begin_track();
        c.fill_rect(15, 15, 40, 40, BLACK);
        let r = c.take_extent().unwrap();
        assert_eq!(r, Rect { x: 15, y: 15, w: 5, h: 5 });
    }

    #[test]
    fn png_round_trip_preserves_pixels() {
        let mut c = Canvas::new(30, 20, WHITE);
        c.line(0, 0, 29, 19, 2, [200, 10, 10]);
        c.text(2, 9, "Hi", 1, BLACK, false);
        let png = c.to_png();
        let back = Canvas::from_png(&png).unwrap();
        assert_eq!(back.to_png(), png);
    }

    #[test]
    fn wedge_covers_quadrant() {
        let mut c = Canvas::new(41, 41, WHITE);
        // screen-clockwise from 0 (east) to a quarter turn (south)
        c.fill_wedge(20, 20, 15, 0.0, std::f64::consts::FRAC_PI_2, BLACK);
        assert_eq!(c.pixel(28, 28), BLACK); // south-east
        assert_eq!(c.pixel(12, 12), WHITE); // north-west
    }

    #[test]
    fn dashes_skip_pixels() {
        let mut c = Canvas::new(60, 10, WHITE);
        c.line_dashed(0, 5, 59, 5, 1, BLACK, Dash::Dashed);
        let on = (0..60).filter(|&x| c.pixel(x, 5) == BLACK).count();
        assert!(on > 10 && on < 55, "dashed line drew {on} pixels");
    }
}
