//! Quaternions and their embedding in the even subalgebra.
//!
//! The units map as `i -> -e23`, `j -> -e31`, `k -> -e12`, which makes the
//! embedding a homomorphism for the Hamilton product.

use std::f64::consts::PI;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::multivector::Multivector;
use crate::{Error, Result, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

/// Polar form `|q| exp(-i n alpha/2)` of a quaternion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Polar {
    pub magnitude: f64,
    pub axis: Vec3,
    /// In `[0, 2pi]`; exactly `2pi` only for negative pure scalars.
    pub angle: f64,
}

impl Quaternion {
    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    pub fn norm(&self) -> f64 {
        (self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3).sqrt()
    }

    pub fn embed(&self) -> Multivector {
        Multivector::new([self.q0, 0.0, 0.0, 0.0, -self.q1, -self.q2, -self.q3, 0.0])
    }

    /// Polar decomposition. For a pure scalar the axis is `e3` by convention;
    /// a negative pure scalar reports the boundary angle `2pi`.
    pub fn polar(&self) -> Result<Polar> {
        let magnitude = self.norm();
        if magnitude == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        let n = [self.q1, self.q2, self.q3];
        let n_norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if n_norm == 0.0 {
            let angle = if self.q0 > 0.0 { 0.0 } else { 2.0 * PI };
            return Ok(Polar { magnitude, axis: [0.0, 0.0, 1.0], angle });
        }
        Ok(Polar {
            magnitude,
            axis: n.map(|x| x / n_norm),
            angle: 2.0 * n_norm.atan2(self.q0),
        })
    }
}

impl Polar {
    /// `magnitude * exp(-i n alpha/2)` as a multivector.
    pub fn reconstruct(&self) -> Multivector {
        let bivector = Multivector::vector(self.axis).hodge_dual().scale(-0.5 * self.angle);
        // axis is unit by construction
        let unit = bivector.exp_bivector().expect("pure bivector");
        unit.as_multivector().scale(self.magnitude)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    /// Hamilton product.
    fn mul(self, r: Quaternion) -> Quaternion {
        let p = self;
        Quaternion {
            q0: p.q0 * r.q0 - p.q1 * r.q1 - p.q2 * r.q2 - p.q3 * r.q3,
            q1: p.q0 * r.q1 + p.q1 * r.q0 + p.q2 * r.q3 - p.q3 * r.q2,
            q2: p.q0 * r.q2 - p.q1 * r.q3 + p.q2 * r.q0 + p.q3 * r.q1,
            q3: p.q0 * r.q3 + p.q1 * r.q2 - p.q2 * r.q1 + p.q3 * r.q0,
        }
    }
}
