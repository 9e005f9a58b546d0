//! Fixed-viewport SVG figures of curves and regions.

use std::fmt::Write;

use num_complex::Complex64;

use crate::range::{ConvexRegion, RegionKind};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 0.1;

/// Affine map from the complex plane to the viewport with equal axis scales.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    center: Complex64,
    scale: f64,
}

impl Frame {
    pub fn fit(points: &[Complex64]) -> Self {
        let (mut lo, mut hi) = (Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0));
        if let Some(first) = points.first() {
            (lo, hi) = (*first, *first);
            for z in points {
                lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
                hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
            }
        }
        let w = (hi.re - lo.re).max(1e-9);
        let h = (hi.im - lo.im).max(1e-9);
        let scale = ((1.0 - 2.0 * MARGIN) * WIDTH / w).min((1.0 - 2.0 * MARGIN) * HEIGHT / h);
        Frame { center: (lo + hi) / 2.0, scale }
    }

    pub fn map(&self, z: Complex64) -> (f64, f64) {
        (WIDTH / 2.0 + (z.re - self.center.re) * self.scale, HEIGHT / 2.0 - (z.im - self.center.im) * self.scale)
    }
}

pub struct SvgPlot {
    frame: Frame,
    body: String,
}

impl SvgPlot {
    /// A plot fitted to `bounds`, with both axes drawn when visible.
    pub fn new(bounds: &[Complex64]) -> Self {
        let frame = Frame::fit(bounds);
        let mut plot = SvgPlot { frame, body: String::new() };
        let (ox, oy) = frame.map(Complex64::new(0.0, 0.0));
        plot.body.push_str("<g class=\"axes\" stroke=\"#999999\" stroke-width=\"1\">\n");
        if (0.0..=HEIGHT).contains(&oy) {
            writeln!(plot.body, "<line x1=\"0\" y1=\"{oy:.3}\" x2=\"{WIDTH}\" y2=\"{oy:.3}\"/>").unwrap();
        }
        if (0.0..=WIDTH).contains(&ox) {
            writeln!(plot.body, "<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{HEIGHT}\"/>").unwrap();
        }
        plot.body.push_str("</g>\n");
        plot
    }

    fn path_data(&self, points: &[Complex64], closed: bool) -> String {
        let mut d = String::new();
        for (i, z) in points.iter().enumerate() {
            let (x, y) = self.frame.map(*z);
            write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M" } else { " L" }).unwrap();
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }

    /// One curve component: a polyline, or a small ring for a point component.
    pub fn component(&mut self, points: &[Complex64], is_point: bool) {
        let d = if is_point {
            let c = points.iter().sum::<Complex64>() / points.len().max(1) as f64;
            let (x, y) = self.frame.map(c);
            format!("M{:.3} {y:.3} a4 4 0 1 0 8 0 a4 4 0 1 0 -8 0 Z", x - 4.0)
        } else {
            self.path_data(points, true)
        };
        writeln!(
            self.body,
            "<path class=\"component\" d=\"{d}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"/>"
        )
        .unwrap();
    }

    pub fn marker(&mut self, z: Complex64, class: &str, color: &str) {
        let (x, y) = self.frame.map(z);
        writeln!(self.body, "<circle class=\"{class}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"{color}\"/>").unwrap();
    }

    /// Shaded convex region; nothing for an empty one.
    pub fn region(&mut self, region: &ConvexRegion) {
        let style = "fill=\"#f4b400\" fill-opacity=\"0.45\" stroke=\"#b8860b\" stroke-width=\"1.5\"";
        match region.kind {
            RegionKind::Empty => {}
            RegionKind::Point => {
                let (x, y) = self.frame.map(region.points[0]);
                writeln!(self.body, "<circle class=\"region\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" {style}/>").unwrap();
            }
            RegionKind::Segment => {
                let (x1, y1) = self.frame.map(region.points[0]);
                let (x2, y2) = self.frame.map(region.points[1]);
                writeln!(
                    self.body,
                    "<line class=\"region\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#b8860b\" stroke-width=\"3\"/>"
                )
                .unwrap();
            }
            RegionKind::Polygon => {
                let pts: Vec<String> = region
                    .points
                    .iter()
                    .map(|z| {
                        let (x, y) = self.frame.map(*z);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                writeln!(self.body, "<polygon class=\"region\" points=\"{}\" {style}/>", pts.join(" ")).unwrap();
            }
        }
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}
