//! Synthetic harbor scenes: pixel-perfect rasterization into label masks,
//! randomized scene generation, boundary-noise injection and brute-force
//! ground-truth distances.
//!
//! The world is flat: every structure lies in the z = 0 plane, which
//! isolates the pipeline's quantization behavior from parallax effects
//! and makes the 3x GSD error bound of the evaluation provable.

use nalgebra::{Point2, Point3, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contours::{LabelMask, CLASS_SHIP, CLASS_UNKNOWN, CLASS_WATER};
use crate::error::{Error, Result};
use crate::frames::{pose_to_transform, CameraIntrinsics, Pose, ProjectionMap};
use crate::geom::{self, OrientedSegment};
use crate::hull::HullModel;

/// Semantic class of a scene obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstacleClass {
    Ship,
    Dock,
}

impl ObstacleClass {
    pub fn label(self) -> u8 {
        match self {
            ObstacleClass::Ship => CLASS_SHIP,
            ObstacleClass::Dock => CLASS_UNKNOWN,
        }
    }
}

/// A solid structure at water level, world frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub class: ObstacleClass,
    /// Simple polygon, world frame, z = 0.
    pub vertices: Vec<Point2<f64>>,
}

/// A complete synthetic harbor scene.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub obstacles: Vec<Obstacle>,
    pub vessel_pose: Pose,
    pub hull: HullModel,
    pub rng_seed: u64,
}

/// On-disk scene description (JSON). The hull travels by file reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub vessel_pose: Pose,
    pub hull_file: String,
    pub obstacles: Vec<ObstacleSpec>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleSpec {
    pub class: ObstacleClass,
    pub vertices: Vec<[f64; 2]>,
}

fn polygon_is_simple(poly: &[Point2<f64>]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a0, a1) = (poly[i], poly[(i + 1) % n]);
        for j in (i + 1)..n {
            // Skip adjacent edges (they share a vertex).
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b0, b1) = (poly[j], poly[(j + 1) % n]);
            if geom::segments_intersect(a0, a1, b0, b1) {
                return false;
            }
        }
    }
    true
}

/// Hull outline placed at the vessel pose, projected to the water plane.
pub(crate) fn hull_world_polygon(hull: &HullModel, vessel_pose: &Pose) -> Result<Vec<Point2<f64>>> {
    let t = pose_to_transform(vessel_pose)?;
    Ok(hull
        .outline()
        .iter()
        .map(|v| {
            let w = t.apply(&Point3::new(v.x, v.y, 0.0));
            Point2::new(w.x, w.y)
        })
        .collect())
}

impl Scene {
    /// Validates the scene invariants: simple obstacle polygons with at
    /// least three vertices, none intersecting the vessel hull at its pose.
    pub fn new(
        vessel_pose: Pose,
        hull: HullModel,
        obstacles: Vec<Obstacle>,
        rng_seed: u64,
    ) -> Result<Self> {
        let hull_poly = hull_world_polygon(&hull, &vessel_pose)?;
        for (i, o) in obstacles.iter().enumerate() {
            if o.vertices.len() < 3 {
                return Err(Error::InvalidScene(format!(
                    "obstacle {i} has {} vertices",
                    o.vertices.len()
                )));
            }
            if o.vertices
                .iter()
                .any(|v| !v.x.is_finite() || !v.y.is_finite())
            {
                return Err(Error::InvalidScene(format!(
                    "obstacle {i} has a non-finite vertex"
                )));
            }
            if !polygon_is_simple(&o.vertices) {
                return Err(Error::InvalidScene(format!(
                    "obstacle {i} is self-intersecting"
                )));
            }
            if geom::simple_polygons_intersect(&hull_poly, &o.vertices) {
                return Err(Error::InvalidScene(format!(
                    "obstacle {i} intersects the vessel hull"
                )));
            }
        }
        Ok(Scene {
            obstacles,
            vessel_pose,
            hull,
            rng_seed,
        })
    }

    /// Builds a scene from its file form plus the hull it references.
    pub fn from_spec(spec: &SceneSpec, hull: HullModel) -> Result<Self> {
        let obstacles = spec
            .obstacles
            .iter()
            .map(|o| Obstacle {
                class: o.class,
                vertices: o.vertices.iter().map(|v| Point2::new(v[0], v[1])).collect(),
            })
            .collect();
        Scene::new(spec.vessel_pose, hull, obstacles, spec.seed)
    }

    /// The file form of this scene, pointing at `hull_file`.
    pub fn to_spec(&self, hull_file: &str) -> SceneSpec {
        SceneSpec {
            vessel_pose: self.vessel_pose,
            hull_file: hull_file.to_string(),
            obstacles: self
                .obstacles
                .iter()
                .map(|o| ObstacleSpec {
                    class: o.class,
                    vertices: o.vertices.iter().map(|v| [v.x, v.y]).collect(),
                })
                .collect(),
            seed: self.rng_seed,
        }
    }
}

/// Classifies every pixel by backprojecting its center onto the water
/// plane and testing polygon membership: the vessel hull wins overlaps,
/// then obstacles in list order, else water. Pixels whose ray misses the
/// plane are water.
pub fn rasterize(scene: &Scene, map: &ProjectionMap, intrinsics: &CameraIntrinsics) -> LabelMask {
    struct Poly {
        min: Point2<f64>,
        max: Point2<f64>,
        vertices: Vec<Point2<f64>>,
        label: u8,
    }
    let bbox = |vertices: &[Point2<f64>]| {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in vertices {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        (min, max)
    };

    let mut polys = Vec::with_capacity(scene.obstacles.len() + 1);
    if let Ok(hull_poly) = hull_world_polygon(&scene.hull, &scene.vessel_pose) {
        let (min, max) = bbox(&hull_poly);
        polys.push(Poly {
            min,
            max,
            vertices: hull_poly,
            label: CLASS_SHIP,
        });
    }
    for o in &scene.obstacles {
        let (min, max) = bbox(&o.vertices);
        polys.push(Poly {
            min,
            max,
            vertices: o.vertices.clone(),
            label: o.class.label(),
        });
    }

    let w = intrinsics.image_width;
    let h = intrinsics.image_height;
    let mut labels = vec![CLASS_WATER; (w as usize) * (h as usize)];
    for y in 0..h {
        for x in 0..w {
            let pixel = Point2::new(f64::from(x), f64::from(y));
            let Ok(world) = map.backproject_to_water(&pixel) else {
                continue;
            };
            let p = Point2::new(world.x, world.y);
            for poly in &polys {
                if p.x < poly.min.x || p.x > poly.max.x || p.y < poly.min.y || p.y > poly.max.y {
                    continue;
                }
                if geom::point_in_polygon(&poly.vertices, p) {
                    labels[(y * w + x) as usize] = poly.label;
                    break;
                }
            }
        }
    }
    LabelMask::new(w, h, labels).expect("rasterized labels are valid by construction")
}

/// Exact per-section distances computed in continuous world coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    /// Indexed by section id; `None` when no obstacle point falls in the
    /// section's region.
    pub distances: Vec<Option<f64>>,
}

/// Default edge sampling step for [`ground_truth`], meters.
pub const GROUND_TRUTH_SPACING_M: f64 = 0.01;

/// World-frame hull sections with outward normals, mirroring the pixel
/// side's region construction.
fn world_sections(scene: &Scene) -> Result<Vec<OrientedSegment>> {
    let t = pose_to_transform(&scene.vessel_pose)?;
    let to_world = |p: Point2<f64>| {
        let w = t.apply(&Point3::new(p.x, p.y, 0.0));
        Point2::new(w.x, w.y)
    };
    let outline: Vec<Point2<f64>> = scene.hull.outline().iter().map(|v| to_world(*v)).collect();
    let centroid = geom::vertex_centroid(&outline);
    scene
        .hull
        .sections()
        .iter()
        .map(|s| {
            let a = to_world(s.endpoint_a);
            let b = to_world(s.endpoint_b);
            let dir = b - a;
            let mut n = Vector2::new(dir.y, -dir.x).normalize();
            let mid = Point2::from((a.coords + b.coords) * 0.5);
            if (centroid - mid).dot(&n) > 0.0 {
                n = -n;
            }
            Ok(OrientedSegment { a, b, normal: n })
        })
        .collect()
}

/// Brute-force oracle: for every hull section, the minimum clamped
/// distance over all obstacle boundary points sampled at `spacing`,
/// restricted by the same outward-side and corner-wedge region rules as
/// the ranging stage.
pub fn ground_truth_with_spacing(scene: &Scene, spacing: f64) -> Result<GroundTruth> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sampling spacing must be > 0, got {spacing}"
        )));
    }
    let sections = world_sections(scene)?;
    let mut best: Vec<Option<f64>> = vec![None; sections.len()];
    for o in &scene.obstacles {
        let n = o.vertices.len();
        for i in 0..n {
            let a = o.vertices[i];
            let b = o.vertices[(i + 1) % n];
            let len = (b - a).norm();
            let steps = (len / spacing).ceil().max(1.0) as usize;
            for k in 0..=steps {
                let t = k as f64 / steps as f64;
                let p = Point2::from(a.coords * (1.0 - t) + b.coords * t);
                for si in geom::assign_point_to_segments(&sections, p) {
                    let (d, _) =
                        geom::clamped_point_segment_distance(sections[si].a, sections[si].b, p);
                    if best[si].map_or(true, |cur| d < cur) {
                        best[si] = Some(d);
                    }
                }
            }
        }
    }
    Ok(GroundTruth { distances: best })
}

/// [`ground_truth_with_spacing`] at the standard 1 cm step.
pub fn ground_truth(scene: &Scene) -> Result<GroundTruth> {
    ground_truth_with_spacing(scene, GROUND_TRUTH_SPACING_M)
}

/// Knobs of the random scene generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneParams {
    /// Number of random obstacles in addition to the berth wall.
    pub n_obstacles: usize,
    /// Gap range (min, max) in meters between the hull and placed
    /// structures.
    pub berth_gap_range: (f64, f64),
    /// Obstacle size range (min, max) in meters.
    pub obstacle_size_range: (f64, f64),
}

impl Default for SceneParams {
    fn default() -> Self {
        SceneParams {
            n_obstacles: 3,
            berth_gap_range: (3.0, 6.0),
            obstacle_size_range: (2.5, 5.0),
        }
    }
}

/// Clearance, in meters, that every generated obstacle keeps to the
/// band-boundary rays of the hull sections: shapes either stay this far
/// from a boundary or cross it this deep. Keeps region membership robust
/// to pixel quantization at the highest sweep altitudes.
const BOUNDARY_CLEARANCE_M: f64 = 0.8;

/// Generated structures stay inside this vessel-frame box so the whole
/// scene fits the default camera footprint at the lowest sweep altitude.
const PLACEMENT_BOX: (f64, f64) = (18.0, 10.5);

const MAX_ATTEMPTS: u32 = 1000;

/// Smallest width of any generated shape in any direction; must exceed
/// 2 * BOUNDARY_CLEARANCE_M or deep crossings become infeasible.
const MIN_SHAPE_THICKNESS_M: f64 = 2.2;

fn shape_ok_against_rays(shape: &[Point2<f64>], sections: &[OrientedSegment]) -> bool {
    for s in sections {
        let t = (s.b - s.a).normalize();
        for anchor in [s.a, s.b] {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in shape {
                let sv = (v - anchor).dot(&t);
                lo = lo.min(sv);
                hi = hi.max(sv);
            }
            let crosses = lo < 0.0 && hi > 0.0;
            let deep = lo <= -BOUNDARY_CLEARANCE_M && hi >= BOUNDARY_CLEARANCE_M;
            let clear = lo >= BOUNDARY_CLEARANCE_M || hi <= -BOUNDARY_CLEARANCE_M;
            if crosses && !deep {
                return false;
            }
            if !crosses && !clear {
                return false;
            }
        }
    }
    true
}

fn in_placement_box(shape: &[Point2<f64>]) -> bool {
    shape
        .iter()
        .all(|v| v.x.abs() <= PLACEMENT_BOX.0 && v.y.abs() <= PLACEMENT_BOX.1)
}

/// Axis-aligned rectangle centered at the origin, then rotated.
fn rectangle(w: f64, h: f64, angle: f64) -> Vec<Point2<f64>> {
    let (c, s) = (angle.cos(), angle.sin());
    [(-w, -h), (w, -h), (w, h), (-w, h)]
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (x * 0.5, y * 0.5);
            Point2::new(c * x - s * y, c * y + s * x)
        })
        .collect()
}

fn regular_polygon(k: usize, circumradius: f64, angle: f64) -> Vec<Point2<f64>> {
    (0..k)
        .map(|i| {
            let a = angle + 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            Point2::new(circumradius * a.cos(), circumradius * a.sin())
        })
        .collect()
}

/// Deterministically generates a scene: a rectangular berth wall along
/// the hull's longest edge plus `n_obstacles` random convex shapes at
/// gaps from `berth_gap_range`. Placements that would overlap the vessel,
/// graze a section-boundary ray or leave the placement box are rejected
/// and resampled, at most [`MAX_ATTEMPTS`] times each.
pub fn generate_scene(seed: u64, params: &SceneParams, hull: &HullModel) -> Result<Scene> {
    let (gap_lo, gap_hi) = params.berth_gap_range;
    let (size_lo, size_hi) = params.obstacle_size_range;
    if !(gap_lo > 0.0 && gap_hi >= gap_lo) {
        return Err(Error::InvalidParameter(format!(
            "berth_gap_range must be positive and ordered, got ({gap_lo}, {gap_hi})"
        )));
    }
    if !(size_lo > 0.0 && size_hi >= size_lo) {
        return Err(Error::InvalidParameter(format!(
            "obstacle_size_range must be positive and ordered, got ({size_lo}, {size_hi})"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vessel_pose = Pose::new(
        nalgebra::Vector3::new(
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            0.0,
        ),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        0.0,
        0.0,
    )?;

    // All placement happens in the vessel frame; the hull, its sections and
    // the clearance geometry live there natively.
    let outline = hull.outline();
    let sections: Vec<OrientedSegment> = {
        let centroid = geom::vertex_centroid(outline);
        hull.sections()
            .iter()
            .map(|s| {
                let dir = s.endpoint_b - s.endpoint_a;
                let mut n = Vector2::new(dir.y, -dir.x).normalize();
                let mid = Point2::from((s.endpoint_a.coords + s.endpoint_b.coords) * 0.5);
                if (centroid - mid).dot(&n) > 0.0 {
                    n = -n;
                }
                OrientedSegment {
                    a: s.endpoint_a,
                    b: s.endpoint_b,
                    normal: n,
                }
            })
            .collect()
    };

    let n_edges = outline.len();
    let edge = |i: usize| (outline[i], outline[(i + 1) % n_edges]);
    let longest_edge = (0..n_edges)
        .max_by(|&a, &b| {
            let la = (edge(a).1 - edge(a).0).norm();
            let lb = (edge(b).1 - edge(b).0).norm();
            la.partial_cmp(&lb).unwrap()
        })
        .expect("hull has edges");

    let hull_centroid = geom::vertex_centroid(outline);
    let edge_frame = |i: usize| {
        let (a, b) = edge(i);
        let t = (b - a).normalize();
        let mut n = Vector2::new(t.y, -t.x);
        let mid = Point2::from((a.coords + b.coords) * 0.5);
        if (hull_centroid - mid).dot(&n) > 0.0 {
            n = -n;
        }
        (a, b, t, n)
    };

    let mut placed: Vec<Obstacle> = Vec::new();
    let mut place = |rng: &mut ChaCha8Rng,
                     placed: &mut Vec<Obstacle>,
                     mut sample: Box<dyn FnMut(&mut ChaCha8Rng) -> (Vec<Point2<f64>>, ObstacleClass)>|
     -> Result<()> {
        for _ in 0..MAX_ATTEMPTS {
            let (shape, class) = sample(rng);
            if !in_placement_box(&shape) {
                continue;
            }
            if geom::simple_polygons_intersect(outline, &shape) {
                continue;
            }
            if !shape_ok_against_rays(&shape, &sections) {
                continue;
            }
            placed.push(Obstacle {
                class,
                vertices: shape,
            });
            return Ok(());
        }
        Err(Error::PlacementFailed {
            attempts: MAX_ATTEMPTS,
        })
    };

    // Berth wall parallel to the longest hull edge.
    {
        let (a, b, t, n) = edge_frame(longest_edge);
        let len = (b - a).norm();
        let mid = Point2::from((a.coords + b.coords) * 0.5);
        place(
            &mut rng,
            &mut placed,
            Box::new(move |rng| {
                let gap = rng.random_range(gap_lo..=gap_hi);
                let ext = rng.random_range(2.0..4.0);
                let half = len * 0.5 + ext;
                let thickness = 2.5;
                let near = mid + n * gap;
                let shape = vec![
                    near - t * half,
                    near + t * half,
                    near + t * half + n * thickness,
                    near - t * half + n * thickness,
                ];
                (shape, ObstacleClass::Dock)
            }),
        )?;
    }

    for _ in 0..params.n_obstacles {
        place(
            &mut rng,
            &mut placed,
            Box::new(move |rng| {
                let ei = rng.random_range(0..n_edges);
                let (a, b, t, n) = edge_frame(ei);
                let len = (b - a).norm();
                let gap = rng.random_range(gap_lo..=gap_hi);
                let size = rng.random_range(size_lo..=size_hi);
                let angle = rng.random_range(0.0..std::f64::consts::PI);
                let use_polygon = rng.random_bool(0.5);
                let shape_local = if use_polygon {
                    let k = rng.random_range(4..=6usize);
                    let r = size * 0.5;
                    let thickness = 2.0 * r * (std::f64::consts::PI / k as f64).cos();
                    if thickness >= MIN_SHAPE_THICKNESS_M {
                        regular_polygon(k, r, angle)
                    } else {
                        rectangle(size, MIN_SHAPE_THICKNESS_M.max(0.45 * size), angle)
                    }
                } else {
                    let h = rng.random_range(MIN_SHAPE_THICKNESS_M..=size.max(MIN_SHAPE_THICKNESS_M));
                    rectangle(size.max(MIN_SHAPE_THICKNESS_M), h, angle)
                };
                // Slide along the edge, push outward until the shape's
                // nearest extent sits `gap` from the edge line.
                let u = rng.random_range(-len * 0.5 - 4.0..=len * 0.5 + 4.0);
                let lo = shape_local
                    .iter()
                    .map(|v| v.coords.dot(&n))
                    .fold(f64::INFINITY, f64::min);
                let mid = Point2::from((a.coords + b.coords) * 0.5);
                let center = mid + t * u + n * (gap - lo);
                let class = if rng.random_bool(0.5) {
                    ObstacleClass::Ship
                } else {
                    ObstacleClass::Dock
                };
                let shape = shape_local
                    .iter()
                    .map(|v| Point2::from(center.coords + v.coords))
                    .collect();
                (shape, class)
            }),
        )?;
    }

    // Everything was generated in the vessel frame; move to world.
    let t = pose_to_transform(&vessel_pose)?;
    let obstacles = placed
        .into_iter()
        .map(|o| Obstacle {
            class: o.class,
            vertices: o
                .vertices
                .iter()
                .map(|v| {
                    let w = t.apply(&Point3::new(v.x, v.y, 0.0));
                    Point2::new(w.x, w.y)
                })
                .collect(),
        })
        .collect();
    Scene::new(vessel_pose, hull.clone(), obstacles, seed)
}

/// Flips boundary-adjacent pixels (those with a differing 4-neighbor) to
/// a uniformly chosen differing neighbor class with probability
/// `flip_rate`. Interior pixels are untouched; deterministic in `seed`.
pub fn add_mask_noise(mask: &LabelMask, seed: u64, flip_rate: f64) -> Result<LabelMask> {
    if !(0.0..0.5).contains(&flip_rate) {
        return Err(Error::InvalidParameter(format!(
            "flip_rate must be in [0, 0.5), got {flip_rate}"
        )));
    }
    let w = mask.width();
    let h = mask.height();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = mask.labels().to_vec();
    for y in 0..h {
        for x in 0..w {
            let own = mask.label(x, y);
            let mut differing = [0u8; 4];
            let mut k = 0;
            let mut push = |lbl: u8| {
                if lbl != own {
                    differing[k] = lbl;
                    k += 1;
                }
            };
            if x > 0 {
                push(mask.label(x - 1, y));
            }
            if x + 1 < w {
                push(mask.label(x + 1, y));
            }
            if y > 0 {
                push(mask.label(x, y - 1));
            }
            if y + 1 < h {
                push(mask.label(x, y + 1));
            }
            if k == 0 {
                continue;
            }
            if rng.random::<f64>() < flip_rate {
                let pick = differing[rng.random_range(0..k)];
                out[(y * w + x) as usize] = pick;
            }
        }
    }
    LabelMask::new(w, h, out)
}
