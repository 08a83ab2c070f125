//! Vessel-to-obstacle ranging from nadir UAV imagery.
//!
//! Given a semantic label mask, the UAV and vessel poses and the camera
//! parameters, the pipeline reports the metric distance from each section
//! of the vessel hull to its nearest obstacle:
//!
//! 1. **frames** – rigid transforms and the vessel-to-image projection chain.
//! 2. **hull** – convex deck outline, discretized into sections, projected
//!    into pixel-space segments.
//! 3. **contours** – mask binarization and outer-border extraction.
//! 4. **ranging** – per-section minimum distances, converted to meters with
//!    the ground-sample-distance factor.
//! 5. **simulator** – synthetic harbor scenes, pixel-perfect rasterization
//!    and brute-force ground-truth distances.
//! 6. **harness** – altitude-sweep evaluation, summary statistics and frame
//!    annotation.
//!
//! All operations are pure and deterministic given their seeds; per-frame
//! calls are safe to run concurrently.

pub mod contours;
pub mod error;
pub mod frames;
mod geom;
pub mod harness;
pub mod hull;
pub mod pnm;
pub mod ranging;
pub mod selftest;
pub mod simulator;

pub use contours::{binarize, extract_contours, BinaryMask, Contour, LabelMask};
pub use error::{Error, Result};
pub use frames::{
    build_projection, nadir_camera_extrinsic, pose_to_transform, transform_to_pose,
    CameraIntrinsics, Pose, ProjectionMap, RigidTransform,
};
pub use hull::{convex_hull, discretize_sections, project_sections, HullModel, ImageSegment, Section};
pub use ranging::{
    estimate_distances, gsd_factor, EstimateParams, FrameMetadata, FrameReport, SectionDistance,
    Warning,
};
pub use simulator::{
    add_mask_noise, generate_scene, ground_truth, rasterize, GroundTruth, Obstacle, ObstacleClass,
    Scene, SceneParams,
};
