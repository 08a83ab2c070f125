//! Coordinate frames, rigid transforms and the pinhole projection chain.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * World frame: ENU, z up, water plane at z = 0.
//! * Body/vessel frames: x forward, attitude as yaw-pitch-roll applied in
//!   Z-Y-X order; yaw counterclockwise from +x seen from above.
//! * Camera frame: +z forward into the scene, +x right, +y down.
//! * Image frame: origin top-left, +x right, +y down, pixel centers at
//!   integer coordinates.
//!
//! The full chain maps a vessel-frame point through
//! vessel -> world -> UAV body -> camera -> image, i.e. the projective
//! matrix is `K * T_cam_body * T_body_world * T_world_vessel`.

use nalgebra::{Matrix3, Matrix3x4, Point2, Point3, Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 6-DoF state of the UAV base or the vessel in the world frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PoseFields", into = "PoseFields")]
pub struct Pose {
    /// Position in meters, world frame.
    pub position: Vector3<f64>,
    /// Rotation about world z, radians, in (-pi, pi].
    pub yaw: f64,
    /// Rotation about the intermediate y axis, radians, in (-pi, pi].
    pub pitch: f64,
    /// Rotation about the body x axis, radians, in (-pi, pi].
    pub roll: f64,
}

/// Flat serialization mirror of [`Pose`] used in config and scene files.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoseFields {
    x: f64,
    y: f64,
    z: f64,
    yaw: f64,
    pitch: f64,
    roll: f64,
}

impl TryFrom<PoseFields> for Pose {
    type Error = Error;

    fn try_from(f: PoseFields) -> Result<Self> {
        Pose::new(Vector3::new(f.x, f.y, f.z), f.yaw, f.pitch, f.roll)
    }
}

impl From<Pose> for PoseFields {
    fn from(p: Pose) -> Self {
        PoseFields {
            x: p.position.x,
            y: p.position.y,
            z: p.position.z,
            yaw: p.yaw,
            pitch: p.pitch,
            roll: p.roll,
        }
    }
}

/// Wraps an angle into (-pi, pi].
pub fn normalize_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

impl Pose {
    /// Builds a pose, normalizing angles into (-pi, pi].
    pub fn new(position: Vector3<f64>, yaw: f64, pitch: f64, roll: f64) -> Result<Self> {
        let all = [position.x, position.y, position.z, yaw, pitch, roll];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPose(format!(
                "non-finite component in position {:?} / angles ({yaw}, {pitch}, {roll})",
                position
            )));
        }
        Ok(Pose {
            position,
            yaw: normalize_angle(yaw),
            pitch: normalize_angle(pitch),
            roll: normalize_angle(roll),
        })
    }

    /// Pose at the world origin with zero attitude.
    pub fn zero() -> Self {
        Pose {
            position: Vector3::zeros(),
            yaw: 0.0,
            pitch: 0.0,
            roll: 0.0,
        }
    }
}

/// Rotation plus translation; maps points of one frame into another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

const ORTHONORMAL_TOL: f64 = 1e-9;

impl RigidTransform {
    /// Validates that `rotation` is orthonormal with determinant +1
    /// (to 1e-9) before wrapping it.
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self> {
        let gram = rotation.transpose() * rotation;
        let dev = (gram - Matrix3::identity()).abs().max();
        if dev > ORTHONORMAL_TOL {
            return Err(Error::InvalidTransform(format!(
                "rotation not orthonormal (max deviation {dev:.3e})"
            )));
        }
        let det = rotation.determinant();
        if (det - 1.0).abs() > ORTHONORMAL_TOL {
            return Err(Error::InvalidTransform(format!(
                "rotation determinant {det} != +1"
            )));
        }
        Ok(RigidTransform {
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        RigidTransform {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    /// `self.compose(other)` applies `other` first: (self * other)(p) = self(other(p)).
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    pub fn apply(&self, p: &Point3<f64>) -> Point3<f64> {
        Point3::from(self.rotation * p.coords + self.translation)
    }
}

/// Realizes the world-from-body transform of a pose:
/// rotation = Rz(yaw) * Ry(pitch) * Rx(roll), translation = position.
pub fn pose_to_transform(pose: &Pose) -> Result<RigidTransform> {
    let all = [
        pose.position.x,
        pose.position.y,
        pose.position.z,
        pose.yaw,
        pose.pitch,
        pose.roll,
    ];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidPose("non-finite pose component".into()));
    }
    // nalgebra's from_euler_angles(r, p, y) is exactly Rz(y) * Ry(p) * Rx(r).
    let rot = Rotation3::from_euler_angles(pose.roll, pose.pitch, pose.yaw);
    Ok(RigidTransform {
        rotation: *rot.matrix(),
        translation: pose.position,
    })
}

/// Recovers the Z-Y-X Euler pose from a world-from-body transform.
///
/// Away from the pitch = +-pi/2 singularity this inverts
/// [`pose_to_transform`] to machine precision.
pub fn transform_to_pose(t: &RigidTransform) -> Pose {
    let r = t.rotation();
    let sin_pitch = -r[(2, 0)];
    let (yaw, pitch, roll) = if sin_pitch.abs() < 1.0 - 1e-12 {
        (
            r[(1, 0)].atan2(r[(0, 0)]),
            sin_pitch.asin(),
            r[(2, 1)].atan2(r[(2, 2)]),
        )
    } else {
        // Gimbal lock: fold everything into yaw, set roll to zero.
        let pitch = if sin_pitch > 0.0 {
            std::f64::consts::FRAC_PI_2
        } else {
            -std::f64::consts::FRAC_PI_2
        };
        ((-r[(0, 1)]).atan2(r[(1, 1)]), pitch, 0.0)
    };
    Pose {
        position: *t.translation(),
        yaw: normalize_angle(yaw),
        pitch: normalize_angle(pitch),
        roll: normalize_angle(roll),
    }
}

/// Pinhole camera parameters: pixel grid plus the physical sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntrinsicsFields", into = "IntrinsicsFields")]
pub struct CameraIntrinsics {
    pub image_width: u32,
    pub image_height: u32,
    /// Physical sensor width, meters.
    pub sensor_width: f64,
    /// Physical sensor height, meters.
    pub sensor_height: f64,
    /// Focal length, meters.
    pub focal_length: f64,
    /// Principal point, pixels.
    pub principal_point: Point2<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntrinsicsFields {
    image_width: u32,
    image_height: u32,
    sensor_width: f64,
    sensor_height: f64,
    focal_length: f64,
    principal_point: [f64; 2],
}

impl TryFrom<IntrinsicsFields> for CameraIntrinsics {
    type Error = Error;

    fn try_from(f: IntrinsicsFields) -> Result<Self> {
        CameraIntrinsics::new(
            f.image_width,
            f.image_height,
            f.sensor_width,
            f.sensor_height,
            f.focal_length,
            Point2::new(f.principal_point[0], f.principal_point[1]),
        )
    }
}

impl From<CameraIntrinsics> for IntrinsicsFields {
    fn from(c: CameraIntrinsics) -> Self {
        IntrinsicsFields {
            image_width: c.image_width,
            image_height: c.image_height,
            sensor_width: c.sensor_width,
            sensor_height: c.sensor_height,
            focal_length: c.focal_length,
            principal_point: [c.principal_point.x, c.principal_point.y],
        }
    }
}

impl CameraIntrinsics {
    pub fn new(
        image_width: u32,
        image_height: u32,
        sensor_width: f64,
        sensor_height: f64,
        focal_length: f64,
        principal_point: Point2<f64>,
    ) -> Result<Self> {
        if image_width == 0 || image_height == 0 {
            return Err(Error::InvalidIntrinsics("zero image dimension".into()));
        }
        for (name, v) in [
            ("sensor_width", sensor_width),
            ("sensor_height", sensor_height),
            ("focal_length", focal_length),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidIntrinsics(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if !principal_point.x.is_finite() || !principal_point.y.is_finite() {
            return Err(Error::InvalidIntrinsics(
                "non-finite principal point".into(),
            ));
        }
        Ok(CameraIntrinsics {
            image_width,
            image_height,
            sensor_width,
            sensor_height,
            focal_length,
            principal_point,
        })
    }

    /// Pixel focal length along x: f * w_i / w_s.
    pub fn fx(&self) -> f64 {
        self.focal_length * f64::from(self.image_width) / self.sensor_width
    }

    /// Pixel focal length along y: f * h_i / h_s.
    pub fn fy(&self) -> f64 {
        self.focal_length * f64::from(self.image_height) / self.sensor_height
    }

    /// The 3x3 intrinsic matrix K.
    pub fn k_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.fx(),
            0.0,
            self.principal_point.x,
            0.0,
            self.fy(),
            self.principal_point.y,
            0.0,
            0.0,
            1.0,
        )
    }
}

/// Camera-from-body transform of a straight-down camera on a level UAV:
/// camera x stays body x (east when yaw = 0), camera z points to world -z.
pub fn nadir_camera_extrinsic() -> RigidTransform {
    RigidTransform {
        rotation: Matrix3::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0),
        translation: Vector3::zeros(),
    }
}

/// The composed vessel-to-image projective map for one frame.
#[derive(Debug, Clone)]
pub struct ProjectionMap {
    matrix: Matrix3x4<f64>,
    camera_altitude: f64,
    world_from_vessel: RigidTransform,
    camera_from_world: RigidTransform,
    intrinsics: CameraIntrinsics,
    k_inv: Matrix3<f64>,
}

/// Composes `K * T_cam_body * inverse(T_world_body) * T_world_vessel`.
///
/// `camera_extrinsic` is the fixed camera-from-body transform.
/// Fails if the camera center is at or below the water plane.
pub fn build_projection(
    intrinsics: &CameraIntrinsics,
    uav_pose: &Pose,
    vessel_pose: &Pose,
    camera_extrinsic: &RigidTransform,
) -> Result<ProjectionMap> {
    let world_from_body = pose_to_transform(uav_pose)?;
    let world_from_vessel = pose_to_transform(vessel_pose)?;
    let camera_from_world = camera_extrinsic.compose(&world_from_body.inverse());
    let camera_from_vessel = camera_from_world.compose(&world_from_vessel);

    let world_from_camera = camera_from_world.inverse();
    let camera_altitude = world_from_camera.translation().z;
    if camera_altitude <= 0.0 {
        return Err(Error::InvalidConfiguration(format!(
            "camera altitude {camera_altitude} is at or below the water plane"
        )));
    }

    let k = intrinsics.k_matrix();
    let rt = {
        let mut m = Matrix3x4::zeros();
        m.fixed_view_mut::<3, 3>(0, 0)
            .copy_from(camera_from_vessel.rotation());
        m.set_column(3, &camera_from_vessel.translation().into());
        m
    };
    let k_inv = k
        .try_inverse()
        .ok_or_else(|| Error::InvalidIntrinsics("K is singular".into()))?;

    Ok(ProjectionMap {
        matrix: k * rt,
        camera_altitude,
        world_from_vessel,
        camera_from_world,
        intrinsics: *intrinsics,
        k_inv,
    })
}

impl ProjectionMap {
    /// The 3x4 matrix mapping homogeneous vessel-frame points to
    /// homogeneous pixel coordinates.
    pub fn matrix(&self) -> &Matrix3x4<f64> {
        &self.matrix
    }

    /// Camera center height above the water plane, meters.
    pub fn camera_altitude(&self) -> f64 {
        self.camera_altitude
    }

    pub fn world_from_vessel(&self) -> &RigidTransform {
        &self.world_from_vessel
    }

    pub fn camera_from_world(&self) -> &RigidTransform {
        &self.camera_from_world
    }

    pub fn intrinsics(&self) -> &CameraIntrinsics {
        &self.intrinsics
    }

    /// Projects a vessel-frame point to continuous pixel coordinates.
    /// The result may lie outside image bounds; the caller clips.
    pub fn project_point(&self, point: &Point3<f64>) -> Result<Point2<f64>> {
        if !point.coords.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite point".into()));
        }
        let h = self.matrix * point.to_homogeneous();
        if h.z <= 0.0 {
            return Err(Error::BehindCamera);
        }
        Ok(Point2::new(h.x / h.z, h.y / h.z))
    }

    /// Projects a world-frame point to pixel coordinates.
    pub fn project_world_point(&self, point: &Point3<f64>) -> Result<Point2<f64>> {
        let cam = self.camera_from_world.apply(point);
        if cam.z <= 0.0 {
            return Err(Error::BehindCamera);
        }
        let k = self.intrinsics.k_matrix();
        let h = k * cam.coords;
        Ok(Point2::new(h.x / h.z, h.y / h.z))
    }

    /// Intersects the viewing ray of a pixel with the water plane z = 0
    /// and returns the world point.
    pub fn backproject_to_water(&self, pixel: &Point2<f64>) -> Result<Point3<f64>> {
        let dir_cam = self.k_inv * Vector3::new(pixel.x, pixel.y, 1.0);
        let rot_world_from_cam = self.camera_from_world.rotation().transpose();
        let dir_world = rot_world_from_cam * dir_cam;
        let center = rot_world_from_cam * -self.camera_from_world.translation();
        if dir_world.z.abs() < 1e-15 {
            return Err(Error::NoPlaneIntersection);
        }
        let t = -center.z / dir_world.z;
        if t <= 0.0 {
            return Err(Error::NoPlaneIntersection);
        }
        Ok(Point3::from(center + t * dir_world))
    }
}
