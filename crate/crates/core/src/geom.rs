//! Small 2D geometry helpers shared across the pipeline modules.

use nalgebra::{Point2, Vector2};

/// A directed segment with a unit normal pointing away from the hull
/// interior. The region rules of the ranging stage are defined on these.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OrientedSegment {
    pub a: Point2<f64>,
    pub b: Point2<f64>,
    pub normal: Vector2<f64>,
}

/// Clamped orthogonal projection of `p` onto segment `ab`.
/// Returns the distance and the closest point on the segment.
pub(crate) fn clamped_point_segment_distance(
    a: Point2<f64>,
    b: Point2<f64>,
    p: Point2<f64>,
) -> (f64, Point2<f64>) {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return ((p - a).norm(), a);
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    let closest = Point2::from(a.coords * (1.0 - t) + b.coords * t);
    ((p - closest).norm(), closest)
}

/// Region assignment for one point against the hull sections.
///
/// Band rule: the point belongs to every section onto whose segment it
/// projects with parameter t in [0, 1] while lying on the outward side.
/// Wedge rule: a point banded nowhere goes to the outward section whose
/// nearer endpoint is closest, ties to the lowest section index. Points
/// outward of no section (hull interior) are assigned nowhere.
pub(crate) fn assign_point_to_segments(segments: &[OrientedSegment], p: Point2<f64>) -> Vec<usize> {
    let mut banded = Vec::new();
    for (idx, s) in segments.iter().enumerate() {
        let ab = s.b - s.a;
        let len2 = ab.norm_squared();
        if len2 == 0.0 {
            continue;
        }
        let t = (p - s.a).dot(&ab) / len2;
        let outward = (p - s.a).dot(&s.normal) >= 0.0;
        if (0.0..=1.0).contains(&t) && outward {
            banded.push(idx);
        }
    }
    if !banded.is_empty() {
        return banded;
    }
    let mut best: Option<(f64, usize)> = None;
    for (idx, s) in segments.iter().enumerate() {
        if (p - s.a).dot(&s.normal) < 0.0 {
            continue;
        }
        let d = (p - s.a).norm().min((p - s.b).norm());
        match best {
            Some((bd, _)) if bd <= d => {}
            _ => best = Some((d, idx)),
        }
    }
    best.map(|(_, idx)| vec![idx]).unwrap_or_default()
}

/// Even-odd (crossing number) point-in-polygon test.
pub(crate) fn point_in_polygon(poly: &[Point2<f64>], p: Point2<f64>) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Minimum distance from `p` to the polygon boundary.
pub(crate) fn distance_to_polygon_boundary(poly: &[Point2<f64>], p: Point2<f64>) -> f64 {
    let n = poly.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (d, _) = clamped_point_segment_distance(poly[i], poly[(i + 1) % n], p);
        best = best.min(d);
    }
    best
}

/// Signed shoelace area; positive for counterclockwise order in a y-up frame.
pub(crate) fn signed_area(poly: &[Point2<f64>]) -> f64 {
    let n = poly.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    0.5 * sum
}

/// Arithmetic mean of the vertices; interior for convex polygons.
pub(crate) fn vertex_centroid(poly: &[Point2<f64>]) -> Point2<f64> {
    let mut acc = Vector2::zeros();
    for p in poly {
        acc += p.coords;
    }
    Point2::from(acc / poly.len() as f64)
}

fn project_onto_axis(poly: &[Point2<f64>], axis: Vector2<f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in poly {
        let v = p.coords.dot(&axis);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Separating-axis overlap test for two convex polygons (closed boundaries
/// count as overlap).
pub(crate) fn convex_polygons_overlap(a: &[Point2<f64>], b: &[Point2<f64>]) -> bool {
    for poly in [a, b] {
        let n = poly.len();
        for i in 0..n {
            let e = poly[(i + 1) % n] - poly[i];
            let axis = Vector2::new(-e.y, e.x);
            if axis.norm_squared() == 0.0 {
                continue;
            }
            let (lo_a, hi_a) = project_onto_axis(a, axis);
            let (lo_b, hi_b) = project_onto_axis(b, axis);
            if hi_a < lo_b || hi_b < lo_a {
                return false;
            }
        }
    }
    true
}

/// Proper or touching intersection test for two simple polygons:
/// any pair of edges intersects, or one polygon contains the other.
pub(crate) fn simple_polygons_intersect(a: &[Point2<f64>], b: &[Point2<f64>]) -> bool {
    for i in 0..a.len() {
        let (a0, a1) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (b0, b1) = (b[j], b[(j + 1) % b.len()]);
            if segments_intersect(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    point_in_polygon(a, b[0]) || point_in_polygon(b, a[0])
}

fn orient(a: Point2<f64>, b: Point2<f64>, c: Point2<f64>) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point2<f64>, b: Point2<f64>, p: Point2<f64>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

pub(crate) fn segments_intersect(
    a0: Point2<f64>,
    a1: Point2<f64>,
    b0: Point2<f64>,
    b1: Point2<f64>,
) -> bool {
    let d1 = orient(a0, a1, b0);
    let d2 = orient(a0, a1, b1);
    let d3 = orient(b0, b1, a0);
    let d4 = orient(b0, b1, a1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(a0, a1, b0))
        || (d2 == 0.0 && on_segment(a0, a1, b1))
        || (d3 == 0.0 && on_segment(b0, b1, a0))
        || (d4 == 0.0 && on_segment(b0, b1, a1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point2<f64>> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(10.0, 10.0),
            Point2::new(0.0, 10.0),
        ]
    }

    #[test]
    fn point_in_polygon_basic() {
        let sq = square();
        assert!(point_in_polygon(&sq, Point2::new(5.0, 5.0)));
        assert!(!point_in_polygon(&sq, Point2::new(-1.0, 5.0)));
        assert!(!point_in_polygon(&sq, Point2::new(5.0, 11.0)));
    }

    #[test]
    fn clamped_distance_cases() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(10.0, 0.0);
        let (d, c) = clamped_point_segment_distance(a, b, Point2::new(5.0, 4.0));
        assert_eq!(d, 4.0);
        assert_eq!(c, Point2::new(5.0, 0.0));
        let (d, c) = clamped_point_segment_distance(a, b, Point2::new(13.0, 4.0));
        assert_eq!(d, 5.0);
        assert_eq!(c, b);
    }

    #[test]
    fn sat_overlap() {
        let sq = square();
        let far: Vec<_> = square()
            .into_iter()
            .map(|p| Point2::new(p.x + 20.0, p.y))
            .collect();
        let touching: Vec<_> = square()
            .into_iter()
            .map(|p| Point2::new(p.x + 10.0, p.y))
            .collect();
        assert!(!convex_polygons_overlap(&sq, &far));
        assert!(convex_polygons_overlap(&sq, &touching));
        assert!(convex_polygons_overlap(&sq, &sq));
    }

    #[test]
    fn polygon_intersection_containment() {
        let sq = square();
        let inner = vec![
            Point2::new(4.0, 4.0),
            Point2::new(6.0, 4.0),
            Point2::new(5.0, 6.0),
        ];
        assert!(simple_polygons_intersect(&sq, &inner));
        let outer: Vec<_> = square()
            .into_iter()
            .map(|p| Point2::new(p.x + 30.0, p.y))
            .collect();
        assert!(!simple_polygons_intersect(&sq, &outer));
    }

    #[test]
    fn area_sign() {
        assert_eq!(signed_area(&square()), 100.0);
        let cw: Vec<_> = square().into_iter().rev().collect();
        assert_eq!(signed_area(&cw), -100.0);
    }
}
