//! Quantum states as elements of the minimal left ideal `G3 f`, `f = (1 + e3)/2`.
//!
//! A state is `Psi = c+ eps+ + c- eps-` with `eps+ = f`, `eps- = e1 f`, and
//! center-valued amplitudes `c = a + b i` (`i = e123`). Writing the four
//! amplitude components out, the 8 coefficients are
//!
//! ```text
//! 1: a+/2   e1: a-/2   e2: b-/2   e3: a+/2   e23: b-/2   e31: -a-/2   e12: b+/2   e123: b+/2
//! ```
//!
//! so membership in the ideal is the four linear constraints checked by
//! [`AlgebraicSpinor::from_multivector`].

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::multivector::Multivector;
use crate::{Error, Result};

/// Absolute tolerance per constrained coefficient pair for ideal membership.
pub const IDEAL_TOLERANCE: f64 = 1e-12;

/// Tolerance on `<Psi|Psi> = 1` for states that must be normalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// An element `re + ps e123` of the center of G3; acts as a complex amplitude.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CenterScalar {
    pub re: f64,
    pub ps: f64,
}

impl CenterScalar {
    pub const ZERO: Self = Self { re: 0.0, ps: 0.0 };
    pub const ONE: Self = Self { re: 1.0, ps: 0.0 };
    pub const I: Self = Self { re: 0.0, ps: 1.0 };

    pub const fn new(re: f64, ps: f64) -> Self {
        Self { re, ps }
    }

    /// `cos(angle) + i sin(angle)`.
    pub fn phase(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    /// Reversion, which negates the pseudoscalar part.
    pub fn reverse(&self) -> Self {
        Self::new(self.re, -self.ps)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.ps * self.ps
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.ps)
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::scalar(self.re) + Multivector::pseudoscalar(self.ps)
    }
}

impl Add for CenterScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.ps + rhs.ps)
    }
}

impl Sub for CenterScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.ps - rhs.ps)
    }
}

impl Neg for CenterScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.re, -self.ps)
    }
}

impl Mul for CenterScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.ps * rhs.ps,
            self.re * rhs.ps + self.ps * rhs.re,
        )
    }
}

impl Mul<f64> for CenterScalar {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.ps * rhs)
    }
}

impl Serialize for CenterScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.re, self.ps].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CenterScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [re, ps] = <[f64; 2]>::deserialize(deserializer)?;
        if !(re.is_finite() && ps.is_finite()) {
            return Err(serde::de::Error::custom("non-finite amplitude"));
        }
        Ok(Self::new(re, ps))
    }
}

/// The primitive idempotent `f = (1 + e3)/2`.
pub fn idempotent_f() -> Multivector {
    Multivector::new([0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0])
}

/// `(eps+, eps-) = (f, e1 f)`, the images of `|+>` and `|->`.
pub fn basis_eps() -> (AlgebraicSpinor, AlgebraicSpinor) {
    (AlgebraicSpinor::plus(), AlgebraicSpinor::minus())
}

/// A state in the left ideal `G3 f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraicSpinor {
    m: Multivector,
}

impl AlgebraicSpinor {
    pub fn plus() -> Self {
        Self { m: idempotent_f() }
    }

    pub fn minus() -> Self {
        Self { m: Multivector::E1 * idempotent_f() }
    }

    /// Wraps a raw multivector after checking that it lies in `G3 f`.
    pub fn from_multivector(m: Multivector) -> Result<Self> {
        let residual = ideal_residual(&m);
        if residual > IDEAL_TOLERANCE {
            return Err(Error::NotInIdeal { residual });
        }
        Ok(Self { m })
    }

    pub fn from_amplitudes(c_plus: CenterScalar, c_minus: CenterScalar) -> Self {
        let (plus, minus) = basis_eps();
        Self {
            m: c_plus.to_multivector() * plus.m + c_minus.to_multivector() * minus.m,
        }
    }

    /// The unique `(c+, c-)` with `Psi = c+ eps+ + c- eps-`.
    pub fn to_amplitudes(&self) -> (CenterScalar, CenterScalar) {
        let c = self.m.coeffs();
        (
            CenterScalar::new(2.0 * c[0], 2.0 * c[7]),
            CenterScalar::new(2.0 * c[1], 2.0 * c[2]),
        )
    }

    pub fn as_multivector(&self) -> Multivector {
        self.m
    }

    /// `<self|other>` as `2 (<self~ other>_0 + <self~ other>_3 i)`.
    pub fn inner(&self, other: &Self) -> CenterScalar {
        let p = self.m.reverse() * other.m;
        CenterScalar::new(2.0 * p.scalar_part(), 2.0 * p.pseudoscalar_part())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.inner(self).re
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.inner(self);
        (n.re - 1.0).abs() <= NORMALIZATION_TOLERANCE && n.ps.abs() <= NORMALIZATION_TOLERANCE
    }

    pub fn check_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            let n = self.inner(self);
            Err(Error::NotNormalized { re: n.re, ps: n.ps })
        }
    }

    /// `m Psi`. The left ideal is closed under left multiplication.
    pub fn left_mul(&self, m: &Multivector) -> Self {
        Self { m: m.gp(&self.m) }
    }
}

/// `m Psi` for any multivector `m`.
pub fn left_mul(m: &Multivector, psi: &AlgebraicSpinor) -> AlgebraicSpinor {
    psi.left_mul(m)
}

impl Add for AlgebraicSpinor {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { m: self.m + rhs.m }
    }
}

impl Sub for AlgebraicSpinor {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self { m: self.m - rhs.m }
    }
}

impl Mul<AlgebraicSpinor> for CenterScalar {
    type Output = AlgebraicSpinor;

    fn mul(self, rhs: AlgebraicSpinor) -> AlgebraicSpinor {
        AlgebraicSpinor { m: self.to_multivector() * rhs.m }
    }
}

impl Mul<AlgebraicSpinor> for f64 {
    type Output = AlgebraicSpinor;

    fn mul(self, rhs: AlgebraicSpinor) -> AlgebraicSpinor {
        AlgebraicSpinor { m: rhs.m.scale(self) }
    }
}

/// Largest violation of the four ideal-membership constraints.
pub fn ideal_residual(m: &Multivector) -> f64 {
    let c = m.coeffs();
    [c[3] - c[0], c[6] - c[7], c[5] + c[1], c[4] - c[2]]
        .iter()
        .fold(0.0, |acc, x| acc.max(x.abs()))
}

#[derive(Serialize, Deserialize)]
struct AmplitudeForm {
    c_plus: CenterScalar,
    c_minus: CenterScalar,
}

impl Serialize for AlgebraicSpinor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (c_plus, c_minus) = self.to_amplitudes();
        AmplitudeForm { c_plus, c_minus }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraicSpinor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let form = AmplitudeForm::deserialize(deserializer)?;
        Ok(Self::from_amplitudes(form.c_plus, form.c_minus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Multivector;

    #[test]
    fn idempotent_properties() {
        let f = idempotent_f();
        assert_eq!(f * f, f);
        assert_eq!(M::E3 * f, f);
        assert_eq!(f * (M::E1 * f), M::ZERO);
    }

    #[test]
    fn basis_is_orthonormal() {
        let (p, m) = basis_eps();
        assert_eq!(p.inner(&p), CenterScalar::ONE);
        assert_eq!(m.inner(&m), CenterScalar::ONE);
        assert_eq!(p.inner(&m), CenterScalar::ZERO);
        assert_eq!(m.inner(&p), CenterScalar::ZERO);
        assert_eq!(m.as_multivector(), (M::E1 - M::E31).scale(0.5));
    }

    #[test]
    fn amplitude_round_trips() {
        let (p, m) = basis_eps();
        assert_eq!(AlgebraicSpinor::from_amplitudes(CenterScalar::ONE, CenterScalar::ZERO), p);
        assert_eq!(AlgebraicSpinor::from_amplitudes(CenterScalar::ZERO, CenterScalar::ONE), m);
        assert_eq!(p.to_amplitudes(), (CenterScalar::ONE, CenterScalar::ZERO));
        let ip = p.left_mul(&M::I);
        assert_eq!(ip.to_amplitudes(), (CenterScalar::I, CenterScalar::ZERO));

        let x = CenterScalar::new(0.3, -1.25);
        let y = CenterScalar::new(-2.5, 0.75);
        assert_eq!(AlgebraicSpinor::from_amplitudes(x, y).to_amplitudes(), (x, y));
    }

    #[test]
    fn rotated_plus_amplitudes() {
        let theta: f64 = 0.7;
        let r = crate::Rotor::axis_angle([0.0, 1.0, 0.0], theta).unwrap();
        let psi = AlgebraicSpinor::plus().left_mul(&r.as_multivector());
        let (cp, cm) = psi.to_amplitudes();
        assert!((cp.re - (theta / 2.0).cos()).abs() < 1e-15 && cp.ps == 0.0);
        assert!((cm.re - (theta / 2.0).sin()).abs() < 1e-15 && cm.ps == 0.0);
    }

    #[test]
    fn left_mul_examples() {
        let (p, m) = basis_eps();
        assert_eq!(p.left_mul(&M::E3), p);
        assert_eq!(left_mul(&M::E1, &p), m);
    }

    #[test]
    fn membership_is_checked() {
        assert!(AlgebraicSpinor::from_multivector(idempotent_f()).is_ok());
        assert!(matches!(
            AlgebraicSpinor::from_multivector(M::E1),
            Err(Error::NotInIdeal { .. })
        ));
        let nearly = idempotent_f() + M::E3.scale(1e-14);
        assert!(AlgebraicSpinor::from_multivector(nearly).is_ok());
    }

    #[test]
    fn normalization_check() {
        let psi = AlgebraicSpinor::from_amplitudes(CenterScalar::new(1.0, 1.0), CenterScalar::ZERO);
        assert!(matches!(psi.check_normalized(), Err(Error::NotNormalized { .. })));
        assert!(AlgebraicSpinor::minus().check_normalized().is_ok());
    }

    #[test]
    fn json_amplitude_form() {
        let psi = AlgebraicSpinor::from_amplitudes(CenterScalar::new(0.6, 0.0), CenterScalar::new(0.0, 0.8));
        let s = serde_json::to_string(&psi).unwrap();
        assert_eq!(s, r#"{"c_plus":[0.6,0.0],"c_minus":[0.0,0.8]}"#);
        let back: AlgebraicSpinor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, psi);
    }
}
