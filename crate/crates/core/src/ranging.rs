//! Core distance computation: assign obstacle contour points to hull
//! sections, minimize clamped point-to-segment distances in pixel space
//! and convert to meters with the ground-sample-distance factor.

use nalgebra::Point2;

use crate::contours::{binarize, extract_contours, split_vessel_and_obstacles, Contour, LabelMask, VesselSplitParams};
use crate::error::{Error, Result};
use crate::frames::{build_projection, CameraIntrinsics, Pose, RigidTransform};
use crate::geom::{self, OrientedSegment};
use crate::hull::{project_sections, HullModel, ImageSegment};

/// One obstacle contour point, tagged with its provenance for
/// deterministic tie-breaking.
#[derive(Debug, Clone, Copy)]
pub struct Candidate {
    pub contour_id: usize,
    pub point_index: usize,
    pub pixel: Point2<f64>,
}

/// Flattens obstacle contours into candidates ordered by
/// (contour id, point index).
pub fn collect_candidates(obstacles: &[Contour]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for c in obstacles {
        for (i, p) in c.points.iter().enumerate() {
            out.push(Candidate {
                contour_id: c.id,
                point_index: i,
                pixel: Point2::new(f64::from(p[0]), f64::from(p[1])),
            });
        }
    }
    out
}

fn oriented(segments: &[ImageSegment]) -> Vec<OrientedSegment> {
    segments
        .iter()
        .map(|s| OrientedSegment {
            a: s.a,
            b: s.b,
            normal: s.outward_normal,
        })
        .collect()
}

/// Assigns every candidate point to the sections whose region contains it.
///
/// A point is a band candidate of section v when its orthogonal projection
/// parameter onto the segment lies in [0, 1] and it sits on the outward
/// side; a point banded nowhere falls into a corner wedge and goes to the
/// outward section with the nearest endpoint (ties to the lowest id), so
/// no obstacle point is invisible. Returns per-section candidate index
/// lists into `points`.
pub fn assign_points_to_sections(
    segments: &[ImageSegment],
    points: &[Candidate],
) -> Vec<Vec<usize>> {
    let oriented = oriented(segments);
    let mut per_section = vec![Vec::new(); segments.len()];
    for (pi, c) in points.iter().enumerate() {
        for si in geom::assign_point_to_segments(&oriented, c.pixel) {
            per_section[si].push(pi);
        }
    }
    per_section
}

/// The winning candidate of one section.
#[derive(Debug, Clone, Copy)]
pub struct SectionMinimum {
    pub pixel_distance: f64,
    pub closest_contour_point: Point2<f64>,
    /// Clamped orthogonal projection of the contour point onto the segment.
    pub closest_hull_point: Point2<f64>,
    pub contour_id: usize,
    pub point_index: usize,
}

/// Minimizes the clamped point-to-segment distance over `candidates`.
/// Ties break to the lowest (contour id, point index); `None` when the
/// candidate list is empty.
pub fn min_perpendicular_distance(
    segment: &ImageSegment,
    candidates: &[Candidate],
) -> Option<SectionMinimum> {
    let mut best: Option<SectionMinimum> = None;
    for c in candidates {
        let (d, closest) = geom::clamped_point_segment_distance(segment.a, segment.b, c.pixel);
        let better = match &best {
            None => true,
            Some(b) => {
                d < b.pixel_distance
                    || (d == b.pixel_distance
                        && (c.contour_id, c.point_index) < (b.contour_id, b.point_index))
            }
        };
        if better {
            best = Some(SectionMinimum {
                pixel_distance: d,
                closest_contour_point: c.pixel,
                closest_hull_point: closest,
                contour_id: c.contour_id,
                point_index: c.point_index,
            });
        }
    }
    best
}

/// Meters on the water plane covered by one pixel:
/// max(a*w_s / (f*w_i), a*h_s / (f*h_i)).
pub fn gsd_factor(altitude: f64, intrinsics: &CameraIntrinsics) -> Result<f64> {
    if !(altitude.is_finite() && altitude > 0.0) {
        return Err(Error::InvalidAltitude(altitude));
    }
    let wx = altitude * intrinsics.sensor_width
        / (intrinsics.focal_length * f64::from(intrinsics.image_width));
    let hy = altitude * intrinsics.sensor_height
        / (intrinsics.focal_length * f64::from(intrinsics.image_height));
    if cfg!(feature = "fault-injection") {
        return Ok(wx.min(hy));
    }
    Ok(wx.max(hy))
}

/// A populated per-section measurement. All fields are present together.
#[derive(Debug, Clone, Copy)]
pub struct Measurement {
    /// Minimum clamped distance in pixels (d_v).
    pub pixel_distance: f64,
    /// The same distance in meters (D_v = gsd * d_v).
    pub metric_distance: f64,
    pub closest_contour_point: Point2<f64>,
    pub closest_hull_point: Point2<f64>,
    pub obstacle_contour_id: usize,
}

/// Distance report entry for one hull section; `None` renders as "??".
#[derive(Debug, Clone, Copy)]
pub struct SectionDistance {
    pub section_id: usize,
    pub measurement: Option<Measurement>,
}

/// Non-fatal conditions attached to a frame result.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// No contour matched the projected hull; every contour was treated
    /// as an obstacle.
    VesselNotFound,
    /// The vessel-classified blob is much larger than the projected hull,
    /// usually a sign of vessel/obstacle overlap in the mask.
    VesselContourAnomaly {
        contour_area_px: f64,
        hull_area_px: f64,
    },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::VesselNotFound => write!(f, "vessel-not-found: no contour matched the projected hull"),
            Warning::VesselContourAnomaly {
                contour_area_px,
                hull_area_px,
            } => write!(
                f,
                "vessel-contour-anomaly: blob area {contour_area_px:.1} px^2 exceeds projected hull area {hull_area_px:.1} px^2 by more than 25%"
            ),
        }
    }
}

/// Frame-level context recorded alongside the section distances.
#[derive(Debug, Clone, Copy)]
pub struct FrameMetadata {
    pub altitude: f64,
    pub uav_pose: Pose,
    pub vessel_pose: Pose,
    pub gsd_factor: f64,
}

/// Per-section distances for one frame.
#[derive(Debug, Clone)]
pub struct FrameReport {
    pub sections: Vec<SectionDistance>,
    pub metadata: FrameMetadata,
    pub warnings: Vec<Warning>,
}

/// Tunables of the full estimation pipeline.
#[derive(Debug, Clone, Copy)]
pub struct EstimateParams {
    /// Fraction of contour points inside the dilated hull required to
    /// classify a contour as the vessel.
    pub vessel_overlap_threshold: f64,
    /// Hull dilation in pixels for the vessel classification.
    pub hull_dilation_px: f64,
}

impl Default for EstimateParams {
    fn default() -> Self {
        EstimateParams {
            vessel_overlap_threshold: 0.5,
            hull_dilation_px: 3.0,
        }
    }
}

/// Assembles the frame report: one entry per hull section, metric
/// distances scaled by the frame-level GSD factor.
pub fn build_report(
    hull: &HullModel,
    minima: &[Option<SectionMinimum>],
    gsd: f64,
    metadata: FrameMetadata,
    warnings: Vec<Warning>,
) -> FrameReport {
    debug_assert_eq!(hull.sections().len(), minima.len());
    let sections = hull
        .sections()
        .iter()
        .zip(minima)
        .map(|(s, m)| SectionDistance {
            section_id: s.id,
            measurement: m.map(|m| Measurement {
                pixel_distance: m.pixel_distance,
                metric_distance: gsd * m.pixel_distance,
                closest_contour_point: m.closest_contour_point,
                closest_hull_point: m.closest_hull_point,
                obstacle_contour_id: m.contour_id,
            }),
        })
        .collect();
    FrameReport {
        sections,
        metadata,
        warnings,
    }
}

/// Threshold for the vessel-contour-anomaly warning: the vessel blob may
/// exceed the projected hull area by at most 25%.
const ANOMALY_AREA_RATIO: f64 = 1.25;

/// Runs the complete ranging pipeline on one frame:
/// binarize -> extract contours -> project hull sections -> split vessel
/// from obstacles -> per-section minimum distances -> GSD conversion.
///
/// Deterministic: identical inputs yield identical reports.
pub fn estimate_distances(
    mask: &LabelMask,
    uav_pose: &Pose,
    vessel_pose: &Pose,
    intrinsics: &CameraIntrinsics,
    camera_extrinsic: &RigidTransform,
    hull: &HullModel,
    params: &EstimateParams,
) -> Result<FrameReport> {
    let map = build_projection(intrinsics, uav_pose, vessel_pose, camera_extrinsic)?;
    let segments = project_sections(hull, &map)?;

    let binary = binarize(mask);
    let contours = extract_contours(&binary);

    let split = split_vessel_and_obstacles(
        contours,
        &segments,
        &VesselSplitParams {
            overlap_threshold: params.vessel_overlap_threshold,
            dilation_px: params.hull_dilation_px,
        },
    );
    let mut warnings = Vec::new();
    if !split.vessel_found {
        warnings.push(Warning::VesselNotFound);
    } else {
        let hull_poly: Vec<Point2<f64>> = segments.iter().map(|s| s.a).collect();
        let hull_area = crate::geom::signed_area(&hull_poly).abs();
        if split.vessel_area_px > ANOMALY_AREA_RATIO * hull_area {
            warnings.push(Warning::VesselContourAnomaly {
                contour_area_px: split.vessel_area_px,
                hull_area_px: hull_area,
            });
        }
    }

    let candidates = collect_candidates(&split.obstacles);
    let assignment = assign_points_to_sections(&segments, &candidates);
    let minima: Vec<Option<SectionMinimum>> = segments
        .iter()
        .zip(&assignment)
        .map(|(seg, idxs)| {
            let list: Vec<Candidate> = idxs.iter().map(|&i| candidates[i]).collect();
            min_perpendicular_distance(seg, &list)
        })
        .collect();

    let gsd = gsd_factor(map.camera_altitude(), intrinsics)?;
    let metadata = FrameMetadata {
        altitude: map.camera_altitude(),
        uav_pose: *uav_pose,
        vessel_pose: *vessel_pose,
        gsd_factor: gsd,
    };
    Ok(build_report(hull, &minima, gsd, metadata, warnings))
}

/// Renders the report in the CSV interchange format; absent values are
/// written as `??`.
pub fn report_to_csv(report: &FrameReport) -> String {
    let mut out = String::from(
        "section_id,pixel_distance,metric_distance,closest_px_x,closest_px_y,hull_px_x,hull_px_y,obstacle_id\n",
    );
    for s in &report.sections {
        match &s.measurement {
            Some(m) => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    s.section_id,
                    m.pixel_distance,
                    m.metric_distance,
                    m.closest_contour_point.x,
                    m.closest_contour_point.y,
                    m.closest_hull_point.x,
                    m.closest_hull_point.y,
                    m.obstacle_contour_id
                ));
            }
            None => {
                out.push_str(&format!("{},??,??,??,??,??,??,??\n", s.section_id));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::nadir_camera_extrinsic;
    use approx::assert_relative_eq;
    use nalgebra::{Vector2, Vector3};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn test_intrinsics() -> CameraIntrinsics {
        CameraIntrinsics::new(640, 360, 0.0064, 0.0036, 0.004, Point2::new(319.5, 179.5)).unwrap()
    }

    fn square_segments() -> Vec<ImageSegment> {
        // 100x100 px square hull at (100, 100), one section per edge,
        // clockwise in image coordinates so the interior is enclosed.
        let c = [
            Point2::new(100.0, 100.0),
            Point2::new(200.0, 100.0),
            Point2::new(200.0, 200.0),
            Point2::new(100.0, 200.0),
        ];
        let n = [
            Vector2::new(0.0, -1.0),
            Vector2::new(1.0, 0.0),
            Vector2::new(0.0, 1.0),
            Vector2::new(-1.0, 0.0),
        ];
        (0..4)
            .map(|i| ImageSegment {
                section_id: i,
                a: c[i],
                b: c[(i + 1) % 4],
                outward_normal: n[i],
            })
            .collect()
    }

    fn candidate(x: f64, y: f64) -> Candidate {
        Candidate {
            contour_id: 0,
            point_index: 0,
            pixel: Point2::new(x, y),
        }
    }

    #[test]
    fn band_point_assigned_to_exactly_one_section() {
        let segs = square_segments();
        let pts = vec![candidate(150.0, 50.0)]; // straight above the top edge
        let assign = assign_points_to_sections(&segs, &pts);
        assert_eq!(assign[0], vec![0]);
        assert!(assign[1].is_empty() && assign[2].is_empty() && assign[3].is_empty());
    }

    #[test]
    fn interior_point_assigned_nowhere() {
        let segs = square_segments();
        let assign = assign_points_to_sections(&segs, &[candidate(150.0, 150.0)]);
        assert!(assign.iter().all(|v| v.is_empty()));
    }

    #[test]
    fn corner_wedge_assignment_and_tie() {
        let segs = square_segments();
        // In the wedge off the (200, 100) corner, between sections 0 and 1:
        // both share the corner endpoint, so the tie goes to section 0.
        let assign = assign_points_to_sections(&segs, &[candidate(210.0, 90.0)]);
        assert_eq!(assign[0], vec![0]);
        assert!(assign[1].is_empty());
    }

    #[test]
    fn wedge_assignment_matches_nearest_point_on_polygon_oracle() {
        let segs = square_segments();
        let poly = [
            Point2::new(100.0, 100.0),
            Point2::new(200.0, 100.0),
            Point2::new(200.0, 200.0),
            Point2::new(100.0, 200.0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..500 {
            let p = Point2::new(rng.random_range(0.0..300.0), rng.random_range(0.0..300.0));
            let assign = assign_points_to_sections(
                &segs,
                &[Candidate {
                    contour_id: 0,
                    point_index: 0,
                    pixel: p,
                }],
            );
            let assigned: Vec<usize> = (0..4).filter(|&i| !assign[i].is_empty()).collect();
            let inside = crate::geom::point_in_polygon(&poly, p);
            if inside {
                assert!(assigned.is_empty(), "interior point {p:?} was assigned");
                continue;
            }
            assert!(!assigned.is_empty(), "exterior point {p:?} went unassigned");
            // Brute-force nearest point on the polygon boundary.
            let brute = (0..4)
                .map(|i| {
                    crate::geom::clamped_point_segment_distance(poly[i], poly[(i + 1) % 4], p).0
                })
                .fold(f64::INFINITY, f64::min);
            let via_assigned = assigned
                .iter()
                .map(|&i| {
                    crate::geom::clamped_point_segment_distance(segs[i].a, segs[i].b, p).0
                })
                .fold(f64::INFINITY, f64::min);
            assert_relative_eq!(via_assigned, brute, epsilon = 1e-9);
        }
    }

    #[test]
    fn min_distance_axis_aligned() {
        let seg = ImageSegment {
            section_id: 0,
            a: Point2::new(0.0, 0.0),
            b: Point2::new(10.0, 0.0),
            outward_normal: Vector2::new(0.0, 1.0),
        };
        let m = min_perpendicular_distance(&seg, &[candidate(5.0, 4.0)]).unwrap();
        assert_eq!(m.pixel_distance, 4.0);
        assert_eq!(m.closest_hull_point, Point2::new(5.0, 0.0));
        assert_eq!(m.closest_contour_point, Point2::new(5.0, 4.0));
    }

    #[test]
    fn min_distance_clamps_to_endpoint() {
        let seg = ImageSegment {
            section_id: 0,
            a: Point2::new(0.0, 0.0),
            b: Point2::new(10.0, 0.0),
            outward_normal: Vector2::new(0.0, 1.0),
        };
        let m = min_perpendicular_distance(&seg, &[candidate(13.0, 4.0)]).unwrap();
        assert_eq!(m.pixel_distance, 5.0);
        assert_eq!(m.closest_hull_point, Point2::new(10.0, 0.0));
    }

    #[test]
    fn min_distance_empty_candidates() {
        let seg = square_segments()[0];
        assert!(min_perpendicular_distance(&seg, &[]).is_none());
    }

    #[test]
    fn min_distance_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..50 {
            let a = Point2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let b = Point2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            if (b - a).norm() < 1e-6 {
                continue;
            }
            let seg = ImageSegment {
                section_id: 0,
                a,
                b,
                outward_normal: Vector2::new(0.0, 1.0),
            };
            let cands: Vec<Candidate> = (0..200)
                .map(|i| Candidate {
                    contour_id: i / 50,
                    point_index: i % 50,
                    pixel: Point2::new(
                        rng.random_range(-20.0..20.0),
                        rng.random_range(-20.0..20.0),
                    ),
                })
                .collect();
            let m = min_perpendicular_distance(&seg, &cands).unwrap();
            let brute = cands
                .iter()
                .map(|c| crate::geom::clamped_point_segment_distance(a, b, c.pixel).0)
                .fold(f64::INFINITY, f64::min);
            assert_relative_eq!(m.pixel_distance, brute, epsilon = 1e-9);
        }
    }

    #[test]
    fn min_distance_tie_breaks_by_lowest_provenance() {
        let seg = ImageSegment {
            section_id: 0,
            a: Point2::new(0.0, 0.0),
            b: Point2::new(10.0, 0.0),
            outward_normal: Vector2::new(0.0, 1.0),
        };
        // Two candidates at exactly the same distance, later one first in
        // the list to prove ordering does not matter.
        let cands = vec![
            Candidate {
                contour_id: 2,
                point_index: 0,
                pixel: Point2::new(7.0, 3.0),
            },
            Candidate {
                contour_id: 1,
                point_index: 4,
                pixel: Point2::new(3.0, 3.0),
            },
        ];
        let m = min_perpendicular_distance(&seg, &cands).unwrap();
        assert_eq!((m.contour_id, m.point_index), (1, 4));
    }

    #[test]
    fn gsd_hand_evaluated() {
        let i = CameraIntrinsics::new(1000, 800, 0.01, 0.004, 0.01, Point2::new(500.0, 400.0))
            .unwrap();
        // width term: 100*0.01/(0.01*1000) = 0.1; height term:
        // 100*0.004/(0.01*800) = 0.05.
        assert_relative_eq!(gsd_factor(100.0, &i).unwrap(), 0.1);
    }

    #[test]
    fn gsd_linear_in_altitude() {
        let i = test_intrinsics();
        for a in [1.0, 17.3, 99.9] {
            assert_eq!(
                gsd_factor(2.0 * a, &i).unwrap(),
                2.0 * gsd_factor(a, &i).unwrap()
            );
        }
    }

    #[test]
    fn gsd_square_pixels_both_terms_equal() {
        let i = test_intrinsics(); // 0.0064/640 == 0.0036/360
        let a = 77.0;
        let expect = a * i.sensor_width / (i.focal_length * 640.0);
        assert_relative_eq!(gsd_factor(a, &i).unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn gsd_rejects_nonpositive_altitude() {
        let i = test_intrinsics();
        assert!(matches!(gsd_factor(0.0, &i), Err(Error::InvalidAltitude(_))));
        assert!(matches!(gsd_factor(-5.0, &i), Err(Error::InvalidAltitude(_))));
    }

    #[test]
    fn gsd_matches_independent_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let wi = rng.random_range(100..4000u32);
            let hi = rng.random_range(100..4000u32);
            let ws = rng.random_range(0.001..0.05);
            let hs = rng.random_range(0.001..0.05);
            let f = rng.random_range(0.002..0.1);
            let a = rng.random_range(1.0..500.0);
            let i = CameraIntrinsics::new(wi, hi, ws, hs, f, Point2::new(0.0, 0.0)).unwrap();
            let got = gsd_factor(a, &i).unwrap();
            let expect = f64::max(a * ws / (f * f64::from(wi)), a * hs / (f * f64::from(hi)));
            assert_relative_eq!(got, expect, max_relative = 1e-12);
        }
    }

    fn hull_12x4() -> HullModel {
        HullModel::new(
            &[
                Point2::new(-6.0, -2.0),
                Point2::new(6.0, -2.0),
                Point2::new(6.0, 2.0),
                Point2::new(-6.0, 2.0),
            ],
            2.0,
        )
        .unwrap()
    }

    #[test]
    fn all_water_mask_reports_unknown_everywhere() {
        let hull = hull_12x4();
        let mask = LabelMask::filled(640, 360, 0).unwrap();
        let uav = Pose::new(Vector3::new(0.0, 0.0, 50.0), 0.0, 0.0, 0.0).unwrap();
        let report = estimate_distances(
            &mask,
            &uav,
            &Pose::zero(),
            &test_intrinsics(),
            &nadir_camera_extrinsic(),
            &hull,
            &EstimateParams::default(),
        )
        .unwrap();
        assert!(report.sections.iter().all(|s| s.measurement.is_none()));
        assert_eq!(report.warnings, vec![Warning::VesselNotFound]);
        let csv = report_to_csv(&report);
        assert!(csv.lines().skip(1).all(|l| l.contains("??")));
    }

    #[test]
    fn populated_sections_respect_gsd_ratio() {
        // Vessel mask plus one obstacle blob to the east.
        let hull = hull_12x4();
        let uav = Pose::new(Vector3::new(0.0, 0.0, 50.0), 0.0, 0.0, 0.0).unwrap();
        let i = test_intrinsics();
        let map = build_projection(&i, &uav, &Pose::zero(), &nadir_camera_extrinsic()).unwrap();
        let mut labels = vec![0u8; 640 * 360];
        // Rasterize the hull region and a dock rectangle by brute force.
        for y in 0..360u32 {
            for x in 0..640u32 {
                let w = map
                    .backproject_to_water(&Point2::new(f64::from(x), f64::from(y)))
                    .unwrap();
                let idx = (y * 640 + x) as usize;
                if w.x.abs() <= 6.0 && w.y.abs() <= 2.0 {
                    labels[idx] = 1;
                } else if (10.0..=14.0).contains(&w.x) && w.y.abs() <= 2.0 {
                    labels[idx] = 2;
                }
            }
        }
        let mask = LabelMask::new(640, 360, labels).unwrap();
        let report = estimate_distances(
            &mask,
            &uav,
            &Pose::zero(),
            &i,
            &nadir_camera_extrinsic(),
            &hull,
            &EstimateParams::default(),
        )
        .unwrap();
        assert!(report.warnings.is_empty());
        let gsd = report.metadata.gsd_factor;
        let populated: Vec<&SectionDistance> = report
            .sections
            .iter()
            .filter(|s| s.measurement.is_some())
            .collect();
        assert!(!populated.is_empty());
        for s in &populated {
            let m = s.measurement.as_ref().unwrap();
            assert_relative_eq!(m.metric_distance, gsd * m.pixel_distance, max_relative = 1e-9);
            let span = (m.closest_contour_point - m.closest_hull_point).norm();
            assert_relative_eq!(span, m.pixel_distance, epsilon = 1e-9);
        }
        // The starboard sections facing the dock must see roughly the 4 m gap.
        let min_metric = populated
            .iter()
            .filter_map(|s| s.measurement.map(|m| m.metric_distance))
            .fold(f64::INFINITY, f64::min);
        assert!((min_metric - 4.0).abs() <= 3.0 * gsd, "got {min_metric}");
    }

    #[test]
    fn per_section_minimality_is_exhaustive() {
        let segs = square_segments();
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        let cands: Vec<Candidate> = (0..300)
            .map(|i| Candidate {
                contour_id: 0,
                point_index: i,
                pixel: Point2::new(rng.random_range(0.0..320.0), rng.random_range(0.0..320.0)),
            })
            .collect();
        let assign = assign_points_to_sections(&segs, &cands);
        for (si, idxs) in assign.iter().enumerate() {
            let list: Vec<Candidate> = idxs.iter().map(|&i| cands[i]).collect();
            if let Some(m) = min_perpendicular_distance(&segs[si], &list) {
                for c in &list {
                    let (d, _) = crate::geom::clamped_point_segment_distance(
                        segs[si].a, segs[si].b, c.pixel,
                    );
                    assert!(d >= m.pixel_distance - 1e-12);
                }
            }
        }
    }

    #[test]
    fn report_csv_layout() {
        let hull = hull_12x4();
        let minima = vec![None; hull.sections().len()];
        let metadata = FrameMetadata {
            altitude: 50.0,
            uav_pose: Pose::zero(),
            vessel_pose: Pose::zero(),
            gsd_factor: 0.125,
        };
        let report = build_report(&hull, &minima, 0.125, metadata, vec![]);
        let csv = report_to_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "section_id,pixel_distance,metric_distance,closest_px_x,closest_px_y,hull_px_x,hull_px_y,obstacle_id"
        );
        assert_eq!(csv.lines().count(), 1 + hull.sections().len());
        assert_eq!(lines.next().unwrap(), "0,??,??,??,??,??,??,??");
    }
}
