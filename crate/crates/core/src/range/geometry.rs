use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionKind {
    Polygon,
    Segment,
    Point,
    Empty,
}

/// Closed convex set: a polygon with counterclockwise vertices, a segment
/// given by its endpoints, a single point, or nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexRegion {
    pub kind: RegionKind,
    pub points: Vec<Complex64>,
}

impl Serialize for ConvexRegion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ConvexRegion", 2)?;
        s.serialize_field("kind", &self.kind)?;
        let pts: Vec<[f64; 2]> = self.points.iter().map(|z| [z.re, z.im]).collect();
        s.serialize_field("points", &pts)?;
        s.end()
    }
}

/// `{z : Re(e^{i theta} z) <= bound}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub theta: f64,
    pub bound: f64,
}

impl HalfPlane {
    pub fn value(&self, z: Complex64) -> f64 {
        z.re * self.theta.cos() - z.im * self.theta.sin()
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Sutherland-Hodgman clip of a convex polygon by one half-plane, with slack `eps`.
pub fn clip(poly: &[Complex64], h: &HalfPlane, eps: f64) -> Vec<Complex64> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (fa, fb) = (h.value(a) - h.bound, h.value(b) - h.bound);
        let (ina, inb) = (fa <= eps, fb <= eps);
        if ina {
            out.push(a);
        }
        if ina != inb && (fa - fb).abs() > 0.0 {
            let t = fa / (fa - fb);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Signed area (positive when counterclockwise).
pub fn area(poly: &[Complex64]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].re * poly[(i + 1) % n].im - poly[(i + 1) % n].re * poly[i].im).sum::<f64>() / 2.0
}

fn diameter_pair(points: &[Complex64]) -> (Complex64, Complex64, f64) {
    let mut best = (points[0], points[0], 0.0);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = (a - b).norm();
            if d > best.2 {
                best = (*a, *b, d);
            }
        }
    }
    best
}

/// Smallest extent over the edge directions of a convex polygon.
fn width(poly: &[Complex64]) -> f64 {
    let n = poly.len();
    (0..n)
        .filter_map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let len = (b - a).norm();
            (len > 0.0).then(|| poly.iter().map(|p| cross(a, b, *p).abs() / len).fold(0.0, f64::max))
        })
        .fold(f64::INFINITY, f64::min)
}

impl ConvexRegion {
    pub fn empty() -> Self {
        ConvexRegion { kind: RegionKind::Empty, points: Vec::new() }
    }

    pub fn point(z: Complex64) -> Self {
        ConvexRegion { kind: RegionKind::Point, points: vec![z] }
    }

    pub fn segment(a: Complex64, b: Complex64) -> Self {
        let (a, b) = if (a.re, a.im) <= (b.re, b.im) { (a, b) } else { (b, a) };
        ConvexRegion { kind: RegionKind::Segment, points: vec![a, b] }
    }

    /// Convex hull of `points`, demoted to a segment or point when the area is
    /// below `1e-14 scale^2` or the width below `1e-8 scale`.
    pub fn from_points(points: &[Complex64], scale: f64) -> Self {
        if points.is_empty() {
            return ConvexRegion::empty();
        }
        let (a, b, d) = diameter_pair(points);
        if d < 1e-8 * scale {
            let c = points.iter().sum::<Complex64>() / points.len() as f64;
            return ConvexRegion::point(c);
        }
        let hull = convex_hull(points);
        if hull.len() < 3 || area(&hull) < 1e-14 * scale * scale || width(&hull) < 1e-8 * scale {
            return ConvexRegion::segment(a, b);
        }
        ConvexRegion { kind: RegionKind::Polygon, points: hull }
    }

    pub fn is_empty(&self) -> bool {
        self.kind == RegionKind::Empty
    }

    pub fn area(&self) -> f64 {
        if self.kind == RegionKind::Polygon {
            area(&self.points)
        } else {
            0.0
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let pts: Vec<Complex64> = self.points.iter().map(|z| f(*z)).collect();
        match self.kind {
            RegionKind::Polygon => ConvexRegion { kind: RegionKind::Polygon, points: convex_hull(&pts) },
            RegionKind::Segment => ConvexRegion::segment(pts[0], pts[1]),
            _ => ConvexRegion { kind: self.kind, points: pts },
        }
    }

    /// Distance from `z` to the set (zero inside).
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match self.kind {
            RegionKind::Empty => f64::INFINITY,
            RegionKind::Point => (z - self.points[0]).norm(),
            RegionKind::Segment => segment_distance(z, self.points[0], self.points[1]),
            RegionKind::Polygon => {
                let n = self.points.len();
                let inside = (0..n).all(|i| cross(self.points[i], self.points[(i + 1) % n], z) >= 0.0);
                if inside {
                    0.0
                } else {
                    (0..n)
                        .map(|i| segment_distance(z, self.points[i], self.points[(i + 1) % n]))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// `max_{a in self} dist(a, other)`, attained at a vertex for convex sets.
    pub fn directed_distance(&self, other: &ConvexRegion) -> f64 {
        self.points.iter().map(|z| other.distance_to(*z)).fold(0.0, f64::max)
    }

    /// Intersection with another convex region, computed by clipping.
    pub fn intersect(&self, other: &ConvexRegion, scale: f64) -> ConvexRegion {
        if self.is_empty() || other.is_empty() {
            return ConvexRegion::empty();
        }
        let eps = 1e-12 * scale;
        let (poly, cutter) = match (self.kind, other.kind) {
            (RegionKind::Polygon, _) => (&other.points, &self.points),
            (_, RegionKind::Polygon) => (&self.points, &other.points),
            _ => {
                // lower-dimensional with lower-dimensional: keep points of one inside the other
                let pts: Vec<Complex64> =
                    self.points.iter().copied().filter(|z| other.distance_to(*z) <= eps).collect();
                return ConvexRegion::from_points(&pts, scale);
            }
        };
        let mut cur: Vec<Complex64> = poly.clone();
        let n = cutter.len();
        for i in 0..n {
            if cur.is_empty() {
                break;
            }
            let (a, e) = (cutter[i], cutter[(i + 1) % n] - cutter[i]);
            // outward normal of a counterclockwise edge is (e.im, -e.re)
            let theta = e.re.atan2(e.im);
            let mut h = HalfPlane { theta, bound: 0.0 };
            h.bound = h.value(a);
            cur = clip(&cur, &h, eps);
        }
        ConvexRegion::from_points(&cur, scale)
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Symmetric Hausdorff distance; `0` between two empty sets and infinity
/// between an empty and a nonempty one.
pub fn region_distance(a: &ConvexRegion, b: &ConvexRegion) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => a.directed_distance(b).max(b.directed_distance(a)),
    }
}
