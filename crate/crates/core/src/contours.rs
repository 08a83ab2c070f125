//! Semantic-mask binarization and outer-border extraction.
//!
//! Solid regions are 8-connected, water is 4-connected (the usual duality
//! for border following on binary images). One outer contour is emitted
//! per solid component, in raster-scan discovery order; hole borders are
//! suppressed because an interior hole can never hold the nearest point
//! to an exterior hull.

use nalgebra::Point2;

use crate::error::{Error, Result};
use crate::geom;
use crate::hull::ImageSegment;

/// Class code for water / free space.
pub const CLASS_WATER: u8 = 0;
/// Class code for ship pixels (the vessel or other vessels).
pub const CLASS_SHIP: u8 = 1;
/// Class code for unknown solid structures (docks etc.).
pub const CLASS_UNKNOWN: u8 = 2;

/// Per-pixel class raster, row-major. Values are {0 = water, 1 = ship,
/// 2 = unknown/dock}.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMask {
    width: u32,
    height: u32,
    labels: Vec<u8>,
}

impl LabelMask {
    pub fn new(width: u32, height: u32, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidMask(format!(
                "label buffer has {} entries for {}x{}",
                labels.len(),
                width,
                height
            )));
        }
        if let Some(bad) = labels.iter().find(|&&v| v > CLASS_UNKNOWN) {
            return Err(Error::InvalidMask(format!("unknown class code {bad}")));
        }
        Ok(LabelMask {
            width,
            height,
            labels,
        })
    }

    /// A mask of uniform class.
    pub fn filled(width: u32, height: u32, class: u8) -> Result<Self> {
        LabelMask::new(width, height, vec![class; (width as usize) * (height as usize)])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, x: u32, y: u32) -> u8 {
        self.labels[y as usize * self.width as usize + x as usize]
    }
}

/// Row-major solidity raster: true = non-water.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    solid: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32, solid: Vec<bool>) -> Result<Self> {
        if solid.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidMask(format!(
                "solid buffer has {} entries for {}x{}",
                solid.len(),
                width,
                height
            )));
        }
        Ok(BinaryMask {
            width,
            height,
            solid,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn solid_pixels(&self) -> &[bool] {
        &self.solid
    }

    #[inline]
    pub fn solid(&self, x: u32, y: u32) -> bool {
        self.solid[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    fn solid_i(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= i64::from(self.width) || y >= i64::from(self.height) {
            return false;
        }
        self.solid[y as usize * self.width as usize + x as usize]
    }
}

/// Marks everything that is not water as solid.
pub fn binarize(mask: &LabelMask) -> BinaryMask {
    BinaryMask {
        width: mask.width,
        height: mask.height,
        solid: mask.labels.iter().map(|&l| l != CLASS_WATER).collect(),
    }
}

/// A closed 8-connected border loop, clockwise in image coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub id: usize,
    /// Integer pixel coordinates (x, y) in trace order.
    pub points: Vec<[u32; 2]>,
    pub is_outer: bool,
}

impl Contour {
    /// Absolute shoelace area of the loop, in px^2.
    pub fn area(&self) -> f64 {
        let pts: Vec<Point2<f64>> = self
            .points
            .iter()
            .map(|p| Point2::new(f64::from(p[0]), f64::from(p[1])))
            .collect();
        geom::signed_area(&pts).abs()
    }
}

/// Neighbor offsets in clockwise order when viewed on screen (y down):
/// W, NW, N, NE, E, SE, S, SW.
const DIRS: [[i64; 2]; 8] = [
    [-1, 0],
    [-1, -1],
    [0, -1],
    [1, -1],
    [1, 0],
    [1, 1],
    [0, 1],
    [-1, 1],
];

fn dir_index(dx: i64, dy: i64) -> usize {
    DIRS.iter()
        .position(|d| d[0] == dx && d[1] == dy)
        .expect("offset is not an 8-neighbor")
}

/// Border following from the top-left pixel of a component. The start
/// pixel's west neighbor is water by construction (it is the first pixel
/// of its component in raster order).
fn trace_outer_border(mask: &BinaryMask, sx: i64, sy: i64) -> Vec<[u32; 2]> {
    // First solid neighbor counterclockwise from W; none means an
    // isolated pixel.
    let mut first = None;
    for step in 0..8 {
        let k = (8 - step) % 8; // W, SW, S, SE, E, NE, N, NW
        let (nx, ny) = (sx + DIRS[k][0], sy + DIRS[k][1]);
        if mask.solid_i(nx, ny) {
            first = Some((nx, ny));
            break;
        }
    }
    let Some(i1) = first else {
        return vec![[sx as u32, sy as u32]];
    };

    let mut points = Vec::new();
    let mut prev = i1; // i2: where we came from
    let mut cur = (sx, sy); // i3: pixel being recorded
    let cap = 4 * mask.solid.len() + 8;
    loop {
        // First solid neighbor clockwise around `cur`, starting just after
        // the direction of `prev`.
        let d = dir_index(prev.0 - cur.0, prev.1 - cur.1);
        let mut next = None;
        for step in 1..=8 {
            let k = (d + step) % 8;
            let (nx, ny) = (cur.0 + DIRS[k][0], cur.1 + DIRS[k][1]);
            if mask.solid_i(nx, ny) {
                next = Some((nx, ny));
                break;
            }
        }
        let i4 = next.expect("current border pixel has a solid neighbor");
        points.push([cur.0 as u32, cur.1 as u32]);
        if i4 == (sx, sy) && cur == i1 {
            break;
        }
        prev = cur;
        cur = i4;
        assert!(points.len() <= cap, "border trace failed to close");
    }
    points
}

/// Extracts one outer contour per 8-connected solid component.
///
/// Components are discovered in raster-scan order (top-to-bottom, then
/// left-to-right), which fixes contour ids. An empty mask yields an
/// empty list.
pub fn extract_contours(mask: &BinaryMask) -> Vec<Contour> {
    let w = mask.width as usize;
    let h = mask.height as usize;
    let mut component = vec![0u32; w * h];
    let mut contours: Vec<Contour> = Vec::new();
    let mut stack: Vec<(i64, i64)> = Vec::new();

    for y in 0..h {
        for x in 0..w {
            let idx = y * w + x;
            if !mask.solid[idx] || component[idx] != 0 {
                continue;
            }
            let comp_id = contours.len() as u32 + 1;
            component[idx] = comp_id;
            stack.push((x as i64, y as i64));
            while let Some((cx, cy)) = stack.pop() {
                for d in DIRS {
                    let (nx, ny) = (cx + d[0], cy + d[1]);
                    if !mask.solid_i(nx, ny) {
                        continue;
                    }
                    let nidx = ny as usize * w + nx as usize;
                    if component[nidx] == 0 {
                        component[nidx] = comp_id;
                        stack.push((nx, ny));
                    }
                }
            }
            let points = trace_outer_border(mask, x as i64, y as i64);
            contours.push(Contour {
                id: contours.len(),
                points,
                is_outer: true,
            });
        }
    }
    contours
}

/// Thresholds that decide which contour is the monitored vessel.
#[derive(Debug, Clone, Copy)]
pub struct VesselSplitParams {
    /// Fraction of contour points that must fall inside the dilated
    /// projected hull.
    pub overlap_threshold: f64,
    /// Hull dilation radius in pixels, absorbing small projection
    /// misalignment.
    pub dilation_px: f64,
}

impl Default for VesselSplitParams {
    fn default() -> Self {
        VesselSplitParams {
            overlap_threshold: 0.5,
            dilation_px: 3.0,
        }
    }
}

/// Result of separating the vessel's own blob from obstacle blobs.
#[derive(Debug, Clone)]
pub struct VesselSplit {
    /// Ids of contours classified as the vessel.
    pub vessel_ids: Vec<usize>,
    /// All remaining contours, in id order.
    pub obstacles: Vec<Contour>,
    /// False when no contour matched the projected hull; the frame is
    /// still processed with every contour treated as an obstacle.
    pub vessel_found: bool,
    /// Total blob area (px^2) of the vessel-classified contours.
    pub vessel_area_px: f64,
}

/// Classifies a contour as vessel when at least `overlap_threshold` of its
/// points lie inside the projected hull dilated by `dilation_px`.
pub fn split_vessel_and_obstacles(
    contours: Vec<Contour>,
    projected_hull: &[ImageSegment],
    params: &VesselSplitParams,
) -> VesselSplit {
    let hull_poly: Vec<Point2<f64>> = projected_hull.iter().map(|s| s.a).collect();
    let mut vessel_ids = Vec::new();
    let mut obstacles = Vec::new();
    let mut vessel_area = 0.0;
    for contour in contours {
        let inside = contour
            .points
            .iter()
            .filter(|p| {
                let pt = Point2::new(f64::from(p[0]), f64::from(p[1]));
                geom::point_in_polygon(&hull_poly, pt)
                    || geom::distance_to_polygon_boundary(&hull_poly, pt) <= params.dilation_px
            })
            .count();
        if (inside as f64) >= params.overlap_threshold * contour.points.len() as f64 {
            vessel_area += contour.area();
            vessel_ids.push(contour.id);
        } else {
            obstacles.push(contour);
        }
    }
    let vessel_found = !vessel_ids.is_empty();
    VesselSplit {
        vessel_ids,
        obstacles,
        vessel_found,
        vessel_area_px: vessel_area,
    }
}
