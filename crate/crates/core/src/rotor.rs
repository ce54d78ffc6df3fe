//! Unit even multivectors and rotations by sandwich product.

use std::ops::Mul;

use serde::Serialize;

use crate::multivector::Multivector;
use crate::{Error, Result, Vec3};

/// Accepted deviation of `R R~` from 1 when constructing a rotor.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// A unit-norm element of the even subalgebra (a unit quaternion).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Rotor(Multivector);

impl Rotor {
    pub const IDENTITY: Self = Self(Multivector::ONE);

    /// Checks that `m` is even-graded and unit before wrapping it.
    pub fn new(m: Multivector) -> Result<Self> {
        if let Some(&index) = [1usize, 2, 3, 7].iter().find(|&&i| m[i] != 0.0) {
            return Err(Error::OddRotor { index });
        }
        let deviation = unit_deviation(&m);
        if deviation > UNIT_TOLERANCE {
            return Err(Error::NonUnitRotor { deviation });
        }
        Ok(Self(m))
    }

    pub(crate) fn from_unit_even(m: Multivector) -> Self {
        debug_assert!(m.is_even());
        debug_assert!(unit_deviation(&m) <= UNIT_TOLERANCE, "not unit: {m}");
        Self(m)
    }

    /// `exp(-i n alpha/2)`: rotates counterclockwise by `alpha` in the plane `i n`.
    pub fn axis_angle(axis: Vec3, alpha: f64) -> Result<Self> {
        let n = Multivector::vector(axis);
        let norm = n.norm();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NonUnitAxis { norm });
        }
        n.hodge_dual().scale(-0.5 * alpha).exp_bivector()
    }

    pub fn as_multivector(&self) -> Multivector {
        self.0
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.reverse())
    }

    /// `R a R~`.
    pub fn sandwich(&self, a: &Multivector) -> Multivector {
        self.0.gp(a).gp(&self.0.reverse())
    }

    /// Sandwich restricted to a vector; returns the rotated vector's components.
    pub fn rotate_vector(&self, v: Vec3) -> Vec3 {
        self.sandwich(&Multivector::vector(v)).vector_part()
    }
}

impl Mul for Rotor {
    type Output = Rotor;

    fn mul(self, rhs: Rotor) -> Rotor {
        Rotor::from_unit_even(self.0.gp(&rhs.0))
    }
}

impl From<Rotor> for Multivector {
    fn from(r: Rotor) -> Multivector {
        r.0
    }
}

impl TryFrom<Multivector> for Rotor {
    type Error = Error;

    fn try_from(m: Multivector) -> Result<Self> {
        Self::new(m)
    }
}

fn unit_deviation(m: &Multivector) -> f64 {
    (m.gp(&m.reverse()) - Multivector::ONE).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type M = Multivector;

    #[test]
    fn axis_angle_cases() {
        assert_eq!(Rotor::axis_angle([0.0, 0.0, 1.0], 0.0).unwrap(), Rotor::IDENTITY);
        let r = Rotor::axis_angle([0.0, 1.0, 0.0], PI / 4.0).unwrap();
        let expected = M::scalar((PI / 8.0).cos()) - M::E31.scale((PI / 8.0).sin());
        assert!((r.as_multivector() - expected).max_abs() < 1e-16);
        let n = [1.0 / 3f64.sqrt(); 3];
        let full = Rotor::axis_angle(n, 2.0 * PI).unwrap();
        assert!((full.as_multivector() + M::ONE).max_abs() < 1e-15);
    }

    #[test]
    fn non_unit_axis_rejected() {
        assert!(matches!(
            Rotor::axis_angle([1.0, 1.0, 0.0], 1.0),
            Err(Error::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn quarter_turn() {
        let r = Rotor::axis_angle([0.0, 0.0, 1.0], PI / 2.0).unwrap();
        let out = r.sandwich(&M::E1);
        assert!((out - M::E2).max_abs() < 1e-15);
        assert_eq!(Rotor::IDENTITY.sandwich(&M::E31), M::E31);
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Rotor::new(M::E1), Err(Error::OddRotor { index: 1 }));
        assert!(matches!(Rotor::new(M::scalar(2.0)), Err(Error::NonUnitRotor { .. })));
        let almost = M::scalar(1.0 + 1e-12);
        assert!(Rotor::new(almost).is_ok());
        assert!(Rotor::new(-M::E12).is_ok());
    }
}
