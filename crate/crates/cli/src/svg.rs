//! Minimal deterministic SVG 1.1 writer for planar figures.

use std::fmt::Write as _;

use dandelin::Point2;

use crate::output::num;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN: f64 = 0.1;

/// Maps figure coordinates onto the canvas, y up, keeping aspect ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min: Point2,
    pub max: Point2,
    scale: f64,
    offset: (f64, f64),
}

impl Viewport {
    /// Bounding box of `points` grown by [`MARGIN`] of its size on each side.
    pub fn fit(points: &[Point2]) -> Self {
        let finite = points.iter().filter(|p| p.x.is_finite() && p.y.is_finite());
        let (mut lo, mut hi) = (Point2::new(f64::MAX, f64::MAX), Point2::new(f64::MIN, f64::MIN));
        for p in finite {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if lo.x > hi.x {
            lo = Point2::new(-1.0, -1.0);
            hi = Point2::new(1.0, 1.0);
        }
        let size = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let pad_x = MARGIN * (hi.x - lo.x).max(1e-3 * size);
        let pad_y = MARGIN * (hi.y - lo.y).max(1e-3 * size);
        let min = Point2::new(lo.x - pad_x, lo.y - pad_y);
        let max = Point2::new(hi.x + pad_x, hi.y + pad_y);
        let (w, h) = (max.x - min.x, max.y - min.y);
        let scale = (WIDTH / w).min(HEIGHT / h);
        let offset = ((WIDTH - scale * w) / 2.0, (HEIGHT - scale * h) / 2.0);
        Self {
            min,
            max,
            scale,
            offset,
        }
    }

    pub fn to_canvas(&self, p: Point2) -> (f64, f64) {
        (
            self.offset.0 + (p.x - self.min.x) * self.scale,
            HEIGHT - (self.offset.1 + (p.y - self.min.y) * self.scale),
        )
    }

    pub fn length(&self, d: f64) -> f64 {
        d * self.scale
    }

    /// Largest coordinate magnitude visible on the canvas.
    pub fn extent(&self) -> f64 {
        [self.min.x, self.min.y, self.max.x, self.max.y]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max((WIDTH.max(HEIGHT)) / self.scale)
    }
}

pub struct Svg {
    view: Viewport,
    body: String,
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

impl Svg {
    pub fn new(view: Viewport, title: &str) -> Self {
        let mut body = String::new();
        let _ = writeln!(body, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = WIDTH,
            h = HEIGHT
        );
        let _ = writeln!(body, "<title>{title}</title>");
        let _ = writeln!(
            body,
            r#"<defs><clipPath id="canvas"><rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>"#
        );
        let _ = writeln!(body, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            body,
            r#"<g clip-path="url(#canvas)" fill="none" stroke-linecap="round" font-family="serif" font-size="14">"#
        );
        Self { view, body }
    }

    pub fn viewport(&self) -> &Viewport {
        &self.view
    }

    pub fn polyline(&mut self, class: &str, stroke: &str, points: &[Point2]) {
        let coords: Vec<String> = points
            .iter()
            .filter(|p| p.x.is_finite() && p.y.is_finite())
            .map(|&p| {
                let (x, y) = self.view.to_canvas(p);
                format!("{},{}", px(x), px(y))
            })
            .collect();
        if coords.len() < 2 {
            return;
        }
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" stroke="{stroke}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }

    pub fn segment(&mut self, class: &str, stroke: &str, a: Point2, b: Point2) {
        let (x1, y1) = self.view.to_canvas(a);
        let (x2, y2) = self.view.to_canvas(b);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" stroke="{stroke}" stroke-width="1" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            px(x1),
            px(y1),
            px(x2),
            px(y2)
        );
    }

    pub fn circle(&mut self, class: &str, stroke: &str, center: Point2, radius: f64) {
        let (cx, cy) = self.view.to_canvas(center);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" stroke="{stroke}" stroke-width="1.5" cx="{}" cy="{}" r="{}"/>"#,
            px(cx),
            px(cy),
            px(self.view.length(radius))
        );
    }

    /// Filled dot carrying the exact figure coordinates in `data-x`/`data-y`.
    pub fn marker(&mut self, class: &str, fill: &str, p: Point2, extra: &[(&str, f64)]) {
        let (cx, cy) = self.view.to_canvas(p);
        let mut attrs = format!(r#" data-x="{}" data-y="{}""#, num(p.x), num(p.y));
        for (k, v) in extra {
            let _ = write!(attrs, r#" data-{k}="{}""#, num(*v));
        }
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" fill="{fill}" stroke="none" cx="{}" cy="{}" r="3"{attrs}/>"#,
            px(cx),
            px(cy)
        );
    }

    pub fn label(&mut self, text: &str, p: Point2) {
        let (x, y) = self.view.to_canvas(p);
        let _ = writeln!(
            self.body,
            r#"<text class="label" fill="black" x="{}" y="{}">{text}</text>"#,
            px(x + 5.0),
            px(y - 5.0)
        );
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</g>\n</svg>\n");
        self.body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_keeps_margin_and_aspect() {
        let v = Viewport::fit(&[Point2::new(-2.0, -1.0), Point2::new(2.0, 1.0)]);
        let (x0, y0) = v.to_canvas(Point2::new(-2.0, 1.0));
        let (x1, y1) = v.to_canvas(Point2::new(2.0, -1.0));
        assert!(x0 > 0.0 && x1 < WIDTH && y0 > 0.0 && y1 < HEIGHT);
        assert!(((x1 - x0) / (y1 - y0) - 2.0).abs() < 1e-12);
    }
}
