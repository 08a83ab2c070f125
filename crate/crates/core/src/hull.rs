//! Vessel silhouette model: convex deck outline, discretization into
//! sections and projection into image-space segments.

use nalgebra::{Point2, Point3, Vector2};

use crate::error::{Error, Result};
use crate::frames::ProjectionMap;
use crate::geom;

/// Convexified deck outline plus its discretization into sections.
///
/// The outline is counterclockwise in the vessel frame (z = 0 deck plane);
/// section endpoints chain head-to-tail around the perimeter.
#[derive(Debug, Clone, PartialEq)]
pub struct HullModel {
    outline: Vec<Point2<f64>>,
    sections: Vec<Section>,
}

/// One sub-segment of the hull outline, the unit at which distances are
/// reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub id: usize,
    pub endpoint_a: Point2<f64>,
    pub endpoint_b: Point2<f64>,
}

impl Section {
    pub fn length(&self) -> f64 {
        (self.endpoint_b - self.endpoint_a).norm()
    }
}

/// A hull section projected into continuous pixel coordinates.
#[derive(Debug, Clone, Copy)]
pub struct ImageSegment {
    pub section_id: usize,
    pub a: Point2<f64>,
    pub b: Point2<f64>,
    /// Unit vector in pixel space, perpendicular to `b - a`, pointing away
    /// from the projected hull interior.
    pub outward_normal: Vector2<f64>,
}

/// Counterclockwise convex hull of a 2D point set (Andrew's monotone
/// chain). Collinear points on hull edges are dropped.
pub fn convex_hull(points: &[Point2<f64>]) -> Result<Vec<Point2<f64>>> {
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidHull("non-finite input point".into()));
    }
    if points.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut pts: Vec<Point2<f64>> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return Err(Error::DegenerateHull);
    }

    let cross = |o: &Point2<f64>, a: &Point2<f64>, b: &Point2<f64>| {
        (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    };

    let mut lower: Vec<Point2<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Point2<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    Ok(lower)
}

/// Splits every polygon edge of length L into ceil(L / max_section_length)
/// equal sections. Polygon vertices are always section endpoints, so ids
/// map stably to physical hull locations.
pub fn discretize_sections(
    polygon: &[Point2<f64>],
    max_section_length: f64,
) -> Result<Vec<Section>> {
    if !(max_section_length.is_finite() && max_section_length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "max_section_length must be > 0, got {max_section_length}"
        )));
    }
    if polygon.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut sections = Vec::new();
    let n = polygon.len();
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        let len = (b - a).norm();
        if len < 1e-6 {
            return Err(Error::InvalidHull(format!(
                "edge {i} shorter than 1e-6 m ({len})"
            )));
        }
        let k = (len / max_section_length).ceil().max(1.0) as usize;
        // lerp keeps shared endpoints bit-exact across sections.
        let lerp = |t: f64| Point2::from(a.coords * (1.0 - t) + b.coords * t);
        for j in 0..k {
            let pa = lerp(j as f64 / k as f64);
            let pb = lerp((j + 1) as f64 / k as f64);
            sections.push(Section {
                id: sections.len(),
                endpoint_a: pa,
                endpoint_b: pb,
            });
        }
    }
    Ok(sections)
}

impl HullModel {
    /// Convexifies `points` and discretizes the outline.
    pub fn new(points: &[Point2<f64>], max_section_length: f64) -> Result<Self> {
        let outline = convex_hull(points)?;
        let sections = discretize_sections(&outline, max_section_length)?;
        Ok(HullModel { outline, sections })
    }

    pub fn outline(&self) -> &[Point2<f64>] {
        &self.outline
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.outline.len();
        (0..n)
            .map(|i| (self.outline[(i + 1) % n] - self.outline[i]).norm())
            .sum()
    }

    /// Outline area in square meters.
    pub fn area(&self) -> f64 {
        geom::signed_area(&self.outline).abs()
    }
}

/// Parses the hull outline file format: one "x y" vertex per line, meters,
/// vessel frame; `#` starts a comment.
pub fn parse_hull_outline(text: &str) -> Result<Vec<Point2<f64>>> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<f64> {
            tok.ok_or_else(|| {
                Error::InvalidHull(format!("line {}: expected 'x y'", lineno + 1))
            })?
            .parse::<f64>()
            .map_err(|e| Error::InvalidHull(format!("line {}: {e}", lineno + 1)))
        };
        let x = parse(it.next())?;
        let y = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::InvalidHull(format!(
                "line {}: trailing tokens",
                lineno + 1
            )));
        }
        points.push(Point2::new(x, y));
    }
    if points.is_empty() {
        return Err(Error::InvalidHull("no vertices in hull file".into()));
    }
    Ok(points)
}

/// Projects every hull section into the image plane and attaches outward
/// normals. Fails if any endpoint is behind the camera or the projected
/// hull lies entirely outside the image.
pub fn project_sections(hull: &HullModel, map: &ProjectionMap) -> Result<Vec<ImageSegment>> {
    let projected_outline: Vec<Point2<f64>> = hull
        .outline()
        .iter()
        .map(|v| map.project_point(&Point3::new(v.x, v.y, 0.0)))
        .collect::<Result<_>>()?;

    let w = f64::from(map.intrinsics().image_width);
    let h = f64::from(map.intrinsics().image_height);
    let image_rect = [
        Point2::new(-0.5, -0.5),
        Point2::new(w - 0.5, -0.5),
        Point2::new(w - 0.5, h - 0.5),
        Point2::new(-0.5, h - 0.5),
    ];
    if !geom::convex_polygons_overlap(&projected_outline, &image_rect) {
        return Err(Error::HullOutOfView);
    }

    let centroid = geom::vertex_centroid(&projected_outline);
    let mut segments = Vec::with_capacity(hull.sections().len());
    for s in hull.sections() {
        let a = map.project_point(&Point3::new(s.endpoint_a.x, s.endpoint_a.y, 0.0))?;
        let b = map.project_point(&Point3::new(s.endpoint_b.x, s.endpoint_b.y, 0.0))?;
        let dir = b - a;
        let norm = dir.norm();
        if norm == 0.0 {
            return Err(Error::InvalidHull(format!(
                "section {} projects to a single pixel",
                s.id
            )));
        }
        let mut n = Vector2::new(dir.y, -dir.x) / norm;
        let mid = Point2::from((a.coords + b.coords) * 0.5);
        if (centroid - mid).dot(&n) > 0.0 {
            n = -n;
        }
        segments.push(ImageSegment {
            section_id: s.id,
            a,
            b,
            outward_normal: n,
        });
    }
    Ok(segments)
}
