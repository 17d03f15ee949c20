//! Monocular obstacle avoidance for MAVs via surrogate-flow visual servoing.
//!
//! The crate closes the loop between three pieces:
//!
//! * a geometric urban-scene simulator ([`scene`]) that renders depth and
//!   building-ID buffers by ray casting, picks the building on a collision
//!   course, and produces analytic optical flow with optional noise;
//! * a flow-servoing controller ([`flow`], [`servo`], [`cem`]) that builds a
//!   synthetic radially-outward "desired flow" over the obstacle mask and
//!   optimizes a 4-DoF velocity command against it with the cross-entropy
//!   method;
//! * an episode/benchmark harness ([`pipeline`], [`bench`]) that flies
//!   scenarios to a goal point, logs trajectories to CSV, and compares the
//!   servoing controller against two reactive flow-balancing baselines
//!   ([`baselines`]).
//!
//! Start with the runnable programs in `examples/`; each demonstrates one
//! capability end to end. The `mavflow` binary drives whole benchmark suites
//! from scenario JSON files (see `scenarios/`).

pub mod baselines;
pub mod bench;
pub mod cem;
pub mod error;
pub mod field;
pub mod flo;
pub mod flow;
pub mod geometry;
pub mod pipeline;
pub mod scene;
pub mod servo;

pub use error::{Error, Result};
