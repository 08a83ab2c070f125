//! Error type shared by every module of the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the ranging pipeline and the simulator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A pose contained non-finite components.
    #[error("invalid pose: {0}")]
    InvalidPose(String),

    /// Camera intrinsics violated a positivity constraint.
    #[error("invalid intrinsics: {0}")]
    InvalidIntrinsics(String),

    /// A rotation matrix was not orthonormal with determinant +1.
    #[error("invalid rigid transform: {0}")]
    InvalidTransform(String),

    /// The camera/vessel configuration cannot produce a usable frame
    /// (e.g. camera at or below the water plane).
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// A point had non-positive depth in the camera frame.
    #[error("point is behind the camera")]
    BehindCamera,

    /// A pixel ray does not intersect the water plane in front of the camera.
    #[error("pixel ray does not intersect the water plane")]
    NoPlaneIntersection,

    /// Fewer than three non-collinear points were supplied for a hull.
    #[error("degenerate hull: input points are collinear or too few")]
    DegenerateHull,

    /// A hull outline or hull file was malformed.
    #[error("invalid hull: {0}")]
    InvalidHull(String),

    /// The projected vessel hull lies entirely outside the image.
    #[error("vessel hull is outside the field of view")]
    HullOutOfView,

    /// Altitude must be strictly positive for GSD conversion.
    #[error("invalid altitude {0}: must be > 0")]
    InvalidAltitude(f64),

    /// A label mask had inconsistent dimensions or an unknown class code.
    #[error("invalid mask: {0}")]
    InvalidMask(String),

    /// A PGM/PPM stream could not be parsed.
    #[error("netpbm parse error: {0}")]
    PnmParse(String),

    /// A scene violated a structural invariant.
    #[error("invalid scene: {0}")]
    InvalidScene(String),

    /// Random placement could not satisfy the scene constraints.
    #[error("scene placement failed after {attempts} rejection attempts")]
    PlacementFailed { attempts: u32 },

    /// A parameter was outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
