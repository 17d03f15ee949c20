//! Coordinate frames, camera model and kinematic pose integration.
//!
//! Conventions used throughout the crate:
//!
//! * **World frame**: x-east, y-north, z-up. Yaw is the rotation about
//!   world z, zero when facing +x, positive counter-clockwise (seen from
//!   above), wrapped to `(-pi, pi]`.
//! * **Body frame**: x-forward, y-left, z-up, attached to the vehicle.
//! * **Camera frame**: z-forward (optical axis along body x), x-right,
//!   y-down. Pixel rows grow along camera y, columns along camera x.

use nalgebra::{Matrix3, Vector3, Vector6};

use crate::error::{Error, Result};

/// Wraps an angle to the half-open interval `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = a.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}

/// MAV state: world position plus heading. Roll and pitch are identically
/// zero for 4-DoF flight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    /// World position in meters.
    pub position: Vector3<f64>,
    /// Heading about world z in radians, wrapped to `(-pi, pi]`.
    pub yaw: f64,
}

impl Pose {
    pub fn new(position: Vector3<f64>, yaw: f64) -> Self {
        Self {
            position,
            yaw: wrap_angle(yaw),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.position.iter().all(|c| c.is_finite()) && self.yaw.is_finite()
    }

    /// Unit vector the vehicle is facing, in world coordinates.
    pub fn heading(&self) -> Vector3<f64> {
        Vector3::new(self.yaw.cos(), self.yaw.sin(), 0.0)
    }
}

/// 4-DoF velocity command in the body frame: forward, left, up in m/s and
/// yaw rate in rad/s (positive counter-clockwise).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Command {
    pub v_fwd: f64,
    pub v_left: f64,
    pub v_up: f64,
    pub yaw_rate: f64,
}

impl Command {
    pub const ZERO: Command = Command {
        v_fwd: 0.0,
        v_left: 0.0,
        v_up: 0.0,
        yaw_rate: 0.0,
    };

    pub fn new(v_fwd: f64, v_left: f64, v_up: f64, yaw_rate: f64) -> Self {
        Self {
            v_fwd,
            v_left,
            v_up,
            yaw_rate,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.v_fwd, self.v_left, self.v_up, self.yaw_rate]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn clamped(&self, bounds: &CommandBounds) -> Command {
        let a = self.to_array();
        let mut out = [0.0; 4];
        for k in 0..4 {
            out[k] = a[k].clamp(bounds.lo[k], bounds.hi[k]);
        }
        Command::from_array(out)
    }
}

/// Per-component `[lo, hi]` box for commands, ordered like
/// [`Command::to_array`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CommandBounds {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
}

impl CommandBounds {
    /// Symmetric bounds `+-(v_fwd, v_left, v_up, yaw_rate)`.
    pub fn symmetric(v_fwd: f64, v_left: f64, v_up: f64, yaw_rate: f64) -> Self {
        Self {
            lo: [-v_fwd, -v_left, -v_up, -yaw_rate],
            hi: [v_fwd, v_left, v_up, yaw_rate],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for k in 0..4 {
            if !(self.lo[k].is_finite() && self.hi[k].is_finite()) || self.lo[k] > self.hi[k] {
                return Err(Error::config(format!(
                    "command bounds component {k}: lo must be <= hi and finite, got [{}, {}]",
                    self.lo[k], self.hi[k]
                )));
            }
        }
        Ok(())
    }
}

impl Default for CommandBounds {
    fn default() -> Self {
        CommandBounds::symmetric(3.0, 3.0, 1.5, 0.8)
    }
}

/// Which frame a [`Twist`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Body,
    Camera,
}

/// 6-component velocity screw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist {
    pub linear: Vector3<f64>,
    pub angular: Vector3<f64>,
    pub frame: Frame,
}

impl Twist {
    /// Stacks the twist as `(vx, vy, vz, wx, wy, wz)`, the column ordering
    /// expected by the interaction matrix.
    pub fn to_vector6(&self) -> Vector6<f64> {
        Vector6::new(
            self.linear.x,
            self.linear.y,
            self.linear.z,
            self.angular.x,
            self.angular.y,
            self.angular.z,
        )
    }
}

/// Pinhole camera intrinsics. `fx`, `fy`, `cx`, `cy` are in pixels.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CameraModel {
    pub width: usize,
    pub height: usize,
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
}

impl CameraModel {
    pub fn new(width: usize, height: usize, fx: f64, fy: f64, cx: f64, cy: f64) -> Result<Self> {
        let cam = Self {
            width,
            height,
            fx,
            fy,
            cx,
            cy,
        };
        cam.validate()?;
        Ok(cam)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 2 || self.height < 2 {
            return Err(Error::config(format!(
                "camera: width and height must be >= 2, got {}x{}",
                self.width, self.height
            )));
        }
        if !(self.fx > 0.0 && self.fy > 0.0 && self.fx.is_finite() && self.fy.is_finite()) {
            return Err(Error::config(format!(
                "camera: focal lengths must be positive, got fx={} fy={}",
                self.fx, self.fy
            )));
        }
        if !(0.0 <= self.cx && self.cx < self.width as f64)
            || !(0.0 <= self.cy && self.cy < self.height as f64)
        {
            return Err(Error::config(format!(
                "camera: principal point ({}, {}) outside image {}x{}",
                self.cx, self.cy, self.width, self.height
            )));
        }
        Ok(())
    }

    /// Converts an integer pixel `(row i, col j)` to normalized image
    /// coordinates `x = (j - cx)/fx`, `y = (i - cy)/fy`.
    pub fn pixel_to_normalized(&self, i: usize, j: usize) -> Result<(f64, f64)> {
        if i >= self.height || j >= self.width {
            return Err(Error::invalid(format!(
                "pixel ({i}, {j}) outside image {}x{}",
                self.height, self.width
            )));
        }
        Ok(self.pixel_to_normalized_unchecked(i as f64, j as f64))
    }

    /// Same conversion for fractional pixel coordinates, without the range
    /// check (reprojection may land outside the image).
    pub fn pixel_to_normalized_unchecked(&self, i: f64, j: f64) -> (f64, f64) {
        ((j - self.cx) / self.fx, (i - self.cy) / self.fy)
    }

    /// Inverse of [`CameraModel::pixel_to_normalized_unchecked`]: normalized
    /// coordinates to fractional `(row, col)`.
    pub fn normalized_to_pixel(&self, x: f64, y: f64) -> (f64, f64) {
        (self.cy + y * self.fy, self.cx + x * self.fx)
    }
}

/// Rotation taking camera-frame vectors into the world frame for a vehicle
/// at the given yaw. Columns are the camera axes (right, down, forward)
/// expressed in world coordinates.
pub fn camera_to_world_rotation(yaw: f64) -> Matrix3<f64> {
    let (s, c) = yaw.sin_cos();
    Matrix3::new(
        s, 0.0, c, //
        -c, 0.0, s, //
        0.0, -1.0, 0.0,
    )
}

/// Advances a pose by one first-order-hold step: body velocities are
/// rotated into the world at the pre-update yaw and held constant over
/// `dt`.
pub fn integrate_pose(pose: &Pose, cmd: &Command, dt: f64) -> Result<Pose> {
    if !pose.is_finite() || !cmd.is_finite() || !dt.is_finite() {
        return Err(Error::invalid("integrate_pose: non-finite input"));
    }
    if dt <= 0.0 {
        return Err(Error::invalid(format!("integrate_pose: dt must be > 0, got {dt}")));
    }
    let (s, c) = pose.yaw.sin_cos();
    let delta = Vector3::new(
        c * cmd.v_fwd - s * cmd.v_left,
        s * cmd.v_fwd + c * cmd.v_left,
        cmd.v_up,
    ) * dt;
    Ok(Pose::new(pose.position + delta, pose.yaw + cmd.yaw_rate * dt))
}

/// Expresses a 4-DoF body command as a camera-frame twist: the camera is
/// rigidly attached with its optical axis along body-forward, so
/// `v_cam = (-v_left, -v_up, v_fwd)` and `w_cam = (0, -yaw_rate, 0)`.
pub fn body_twist_to_camera_twist(cmd: &Command) -> Twist {
    Twist {
        linear: Vector3::new(-cmd.v_left, -cmd.v_up, cmd.v_fwd),
        angular: Vector3::new(0.0, -cmd.yaw_rate, 0.0),
        frame: Frame::Camera,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn test_cam() -> CameraModel {
        CameraModel::new(640, 480, 100.0, 100.0, 320.0, 240.0).unwrap()
    }

    #[test]
    fn principal_point_maps_to_origin() {
        let cam = test_cam();
        let (x, y) = cam.pixel_to_normalized(240, 320).unwrap();
        assert_eq!((x, y), (0.0, 0.0));
    }

    #[test]
    fn pinhole_formula_hand_values() {
        let cam = test_cam();
        // x = (420 - 320)/100, y = (240 - 240)/100
        assert_eq!(cam.pixel_to_normalized(240, 420).unwrap(), (1.0, 0.0));
        // x = (320 - 320)/100, y = (140 - 240)/100
        assert_eq!(cam.pixel_to_normalized(140, 320).unwrap(), (0.0, -1.0));
    }

    #[test]
    fn out_of_range_pixel_rejected() {
        let cam = test_cam();
        assert!(cam.pixel_to_normalized(480, 0).is_err());
        assert!(cam.pixel_to_normalized(0, 640).is_err());
    }

    #[test]
    fn camera_invariants_enforced() {
        assert!(CameraModel::new(1, 480, 100.0, 100.0, 0.0, 0.0).is_err());
        assert!(CameraModel::new(640, 480, 0.0, 100.0, 0.0, 0.0).is_err());
        assert!(CameraModel::new(640, 480, 100.0, 100.0, 640.0, 0.0).is_err());
    }

    #[test]
    fn straight_line_motion() {
        let pose = Pose::new(Vector3::new(0.0, 0.0, 10.0), 0.0);
        let next = integrate_pose(&pose, &Command::new(1.0, 0.0, 0.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(next.position, Vector3::new(1.0, 0.0, 10.0), epsilon = 1e-12);
        assert_eq!(next.yaw, 0.0);
    }

    #[test]
    fn forward_rotates_with_yaw() {
        let pose = Pose::new(Vector3::new(0.0, 0.0, 10.0), PI / 2.0);
        let next = integrate_pose(&pose, &Command::new(1.0, 0.0, 0.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(next.position, Vector3::new(0.0, 1.0, 10.0), epsilon = 1e-12);
        assert_relative_eq!(next.yaw, PI / 2.0);
    }

    #[test]
    fn pure_yaw_wraps_into_half_open_interval() {
        let pose = Pose::new(Vector3::zeros(), 0.0);
        let next = integrate_pose(&pose, &Command::new(0.0, 0.0, 0.0, PI), 1.0).unwrap();
        assert_relative_eq!(next.position, Vector3::zeros());
        assert_eq!(next.yaw, PI);
        // one more step crosses pi and wraps negative
        let next2 = integrate_pose(&next, &Command::new(0.0, 0.0, 0.0, 0.1), 1.0).unwrap();
        assert!(next2.yaw <= PI && next2.yaw > -PI);
        assert_relative_eq!(next2.yaw, PI + 0.1 - 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn non_finite_inputs_rejected() {
        let pose = Pose::new(Vector3::zeros(), 0.0);
        assert!(integrate_pose(&pose, &Command::new(f64::NAN, 0.0, 0.0, 0.0), 1.0).is_err());
        assert!(integrate_pose(&pose, &Command::ZERO, 0.0).is_err());
    }

    #[test]
    fn camera_twist_frame_mapping() {
        let t = body_twist_to_camera_twist(&Command::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!(t.linear, Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(t.angular, Vector3::zeros());

        let t = body_twist_to_camera_twist(&Command::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!(t.linear, Vector3::new(-1.0, 0.0, 0.0));

        let t = body_twist_to_camera_twist(&Command::new(0.0, 0.0, 0.0, 1.0));
        assert_eq!(t.linear, Vector3::zeros());
        assert_eq!(t.angular, Vector3::new(0.0, -1.0, 0.0));
        assert_eq!(t.frame, Frame::Camera);
    }

    #[test]
    fn camera_rotation_columns_are_camera_axes() {
        // yaw = 0: right = -world y, down = -world z, forward = +world x
        let r = camera_to_world_rotation(0.0);
        assert_relative_eq!(r.column(0).into_owned(), Vector3::new(0.0, -1.0, 0.0));
        assert_relative_eq!(r.column(1).into_owned(), Vector3::new(0.0, 0.0, -1.0));
        assert_relative_eq!(r.column(2).into_owned(), Vector3::new(1.0, 0.0, 0.0));
        // orthonormality at an arbitrary yaw
        let r = camera_to_world_rotation(0.73);
        assert_relative_eq!(r * r.transpose(), nalgebra::Matrix3::identity(), epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn pixel_round_trip_is_exact(
            w in 2usize..2000, h in 2usize..2000,
            fx in 1.0f64..2000.0, fy in 1.0f64..2000.0,
            iq in 0.0f64..1.0, jq in 0.0f64..1.0,
        ) {
            let cam = CameraModel::new(w, h, fx, fy, (w as f64) / 2.0, (h as f64) / 2.0).unwrap();
            let i = (iq * (h - 1) as f64).floor();
            let j = (jq * (w - 1) as f64).floor();
            let (x, y) = cam.pixel_to_normalized_unchecked(i, j);
            let (ri, rj) = cam.normalized_to_pixel(x, y);
            prop_assert!((ri - i).abs() < 1e-9);
            prop_assert!((rj - j).abs() < 1e-9);
        }

        #[test]
        fn zero_command_is_identity(
            x in -100.0f64..100.0, y in -100.0f64..100.0, z in -100.0f64..100.0,
            yaw in -3.0f64..3.0, dt in 0.001f64..10.0,
        ) {
            let pose = Pose::new(Vector3::new(x, y, z), yaw);
            let next = integrate_pose(&pose, &Command::ZERO, dt).unwrap();
            prop_assert_eq!(next, pose);
        }

        #[test]
        fn translation_steps_compose(
            yaw in -3.0f64..3.0,
            vf in -3.0f64..3.0, vl in -3.0f64..3.0, vu in -1.5f64..1.5,
            dt in 0.001f64..1.0,
        ) {
            let pose = Pose::new(Vector3::new(1.0, -2.0, 10.0), yaw);
            let cmd = Command::new(vf, vl, vu, 0.0);
            let twice = integrate_pose(&integrate_pose(&pose, &cmd, dt).unwrap(), &cmd, dt).unwrap();
            let once = integrate_pose(&pose, &cmd, 2.0 * dt).unwrap();
            prop_assert!((twice.position - once.position).norm() < 1e-12);
            prop_assert_eq!(twice.yaw, once.yaw);
        }

        #[test]
        fn camera_twist_is_linear(
            a in -5.0f64..5.0, b in -5.0f64..5.0,
            c1 in proptest::array::uniform4(-3.0f64..3.0),
            c2 in proptest::array::uniform4(-3.0f64..3.0),
        ) {
            let lhs = body_twist_to_camera_twist(&Command::from_array([
                a * c1[0] + b * c2[0],
                a * c1[1] + b * c2[1],
                a * c1[2] + b * c2[2],
                a * c1[3] + b * c2[3],
            ]));
            let t1 = body_twist_to_camera_twist(&Command::from_array(c1));
            let t2 = body_twist_to_camera_twist(&Command::from_array(c2));
            prop_assert!((lhs.linear - (t1.linear * a + t2.linear * b)).norm() < 1e-12);
            prop_assert!((lhs.angular - (t1.angular * a + t2.angular * b)).norm() < 1e-12);
        }

        #[test]
        fn wrap_angle_lands_in_half_open_interval(a in -100.0f64..100.0) {
            let w = wrap_angle(a);
            prop_assert!(w > -PI && w <= PI);
            // congruent modulo 2*pi
            let diff = (a - w) / (2.0 * PI);
            prop_assert!((diff - diff.round()).abs() < 1e-9);
        }
    }
}
