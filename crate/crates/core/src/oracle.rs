//! Conventional two-state quantum mechanics over 2x2 complex matrices.
//!
//! This is the reference side of every differential test. Nothing here calls
//! the geometric-algebra arithmetic: [`rep`], [`unrep`] and [`spinor_rep`] only
//! read or write raw coefficient arrays, and [`mat_exp`] uses a Taylor series
//! with scaling and squaring rather than the trigonometric closed form.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::multivector::Multivector;
use crate::spinor::AlgebraicSpinor;
use crate::{Error, Result};

pub type Complex = Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Terms kept in the Taylor core of [`mat_exp`].
const TAYLOR_ORDER: usize = 18;
/// The argument is halved until its 1-norm drops below this.
const SCALED_NORM_LIMIT: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix2 {
    pub m: [[Complex; 2]; 2],
}

impl ComplexMatrix2 {
    pub const ZERO: Self = Self { m: [[ZERO, ZERO], [ZERO, ZERO]] };
    pub const IDENTITY: Self = Self { m: [[ONE, ZERO], [ZERO, ONE]] };

    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self { m: self.m.map(|row| row.map(|x| s * x)) }
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |acc, x| acc.max(x.norm()))
    }

    /// Maximum column sum of entry moduli.
    pub fn norm_1(&self) -> f64 {
        let col = |j: usize| self.m[0][j].norm() + self.m[1][j].norm();
        col(0).max(col(1))
    }

    pub fn hermitian_deviation(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOLERANCE * self.max_abs().max(1.0)
    }

    pub fn is_unitary(&self) -> bool {
        (self.adjoint() * *self - Self::IDENTITY).max_abs() <= UNITARY_TOLERANCE
    }

    pub fn apply(&self, v: &StateVector2) -> StateVector2 {
        let m = &self.m;
        StateVector2 {
            c_plus: m[0][0] * v.c_plus + m[0][1] * v.c_minus,
            c_minus: m[1][0] * v.c_plus + m[1][1] * v.c_minus,
        }
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ComplexMatrix2 {
    type Output = Self;

    fn neg(self) -> Self {
        Self { m: self.m.map(|row| row.map(|x| -x)) }
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }
}

impl Mul<f64> for ComplexMatrix2 {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex::new(rhs, 0.0))
    }
}

/// Column state `c+ |+> + c- |->`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector2 {
    pub c_plus: Complex,
    pub c_minus: Complex,
}

impl StateVector2 {
    pub const PLUS: Self = Self { c_plus: ONE, c_minus: ZERO };
    pub const MINUS: Self = Self { c_plus: ZERO, c_minus: ONE };

    pub const fn new(c_plus: Complex, c_minus: Complex) -> Self {
        Self { c_plus, c_minus }
    }

    /// `<self|other>`.
    pub fn dot(&self, other: &Self) -> Complex {
        self.c_plus.conj() * other.c_plus + self.c_minus.conj() * other.c_minus
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_plus.norm_sqr() + self.c_minus.norm_sqr()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-9
    }

    /// `(<sigma1>, <sigma2>, <sigma3>)` of a normalized state.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let cross = self.c_plus.conj() * self.c_minus;
        [
            2.0 * cross.re,
            2.0 * cross.im,
            self.c_plus.norm_sqr() - self.c_minus.norm_sqr(),
        ]
    }
}

/// Identity for `k = 0`, otherwise the Pauli matrix `sigma_k`.
pub fn pauli(k: usize) -> Result<ComplexMatrix2> {
    Ok(match k {
        0 => ComplexMatrix2::IDENTITY,
        1 => ComplexMatrix2::new(ZERO, ONE, ONE, ZERO),
        2 => ComplexMatrix2::new(ZERO, -I, I, ZERO),
        3 => ComplexMatrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => return Err(Error::InvalidPauliIndex(k)),
    })
}

fn sigma(k: usize) -> ComplexMatrix2 {
    pauli(k).expect("index in 0..=3")
}

/// Matrix images of the 8 blades, each composite blade formed as the matrix
/// product of its generators.
pub fn blade_images() -> [ComplexMatrix2; 8] {
    let (s1, s2, s3) = (sigma(1), sigma(2), sigma(3));
    [sigma(0), s1, s2, s3, s2 * s3, s3 * s1, s1 * s2, s1 * s2 * s3]
}

/// The isomorphism `G3 -> Mat(2, C)`.
pub fn rep(a: &Multivector) -> ComplexMatrix2 {
    blade_images()
        .iter()
        .zip(a.coeffs())
        .fold(ComplexMatrix2::ZERO, |acc, (img, &x)| acc + *img * x)
}

/// Inverse of [`rep`]. Writes `M = sum_k z_k sigma_k` with `z_k = tr(sigma_k M)/2`
/// and splits each `z_k` into its real (grade 0/1) and imaginary (grade 3/2) part.
pub fn unrep(m: &ComplexMatrix2) -> Multivector {
    let z = [0, 1, 2, 3].map(|k| (sigma(k) * *m).trace() * 0.5);
    // i sigma_1, i sigma_2, i sigma_3 are the images of e23, e31, e12; i sigma_0 of e123
    Multivector::new([
        z[0].re, z[1].re, z[2].re, z[3].re, z[1].im, z[2].im, z[3].im, z[0].im,
    ])
}

/// Column spinor of a state in `G3 f`: the first column of its matrix image,
/// since `rep(f)` projects onto `|+>`.
pub fn spinor_rep(psi: &AlgebraicSpinor) -> StateVector2 {
    let m = rep(&psi.as_multivector());
    StateVector2::new(m.m[0][0], m.m[1][0])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianEigen {
    /// `(lambda+, lambda-)` with `lambda+ >= lambda-`.
    pub values: [f64; 2],
    pub vectors: [StateVector2; 2],
}

/// Closed-form eigendecomposition of a Hermitian 2x2 matrix from the roots of
/// `lambda^2 - tr(H) lambda + det(H) = 0`.
pub fn eigen_hermitian(h: &ComplexMatrix2) -> Result<HermitianEigen> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian { deviation: h.hermitian_deviation() });
    }
    let a = h.m[0][0].re;
    let d = h.m[1][1].re;
    let b = h.m[0][1];
    let mean = 0.5 * h.trace().re;
    // (tr/2)^2 - det written as a sum of squares, which cannot go negative
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    let values = [mean + half_gap, mean - half_gap];

    let vectors = if b.norm() == 0.0 {
        if a >= d {
            [StateVector2::PLUS, StateVector2::MINUS]
        } else {
            [StateVector2::MINUS, StateVector2::PLUS]
        }
    } else {
        values.map(|lambda| {
            // both columns of adj(H - lambda) span the eigenspace; take the longer
            let u = StateVector2::new(b, Complex::new(lambda - a, 0.0));
            let w = StateVector2::new(Complex::new(lambda - d, 0.0), h.m[1][0]);
            let v = if u.norm_sqr() >= w.norm_sqr() { u } else { w };
            normalize_phase(v)
        })
    };
    Ok(HermitianEigen { values, vectors })
}

/// Unit-normalizes and rotates the phase so the first nonzero component is real positive.
fn normalize_phase(v: StateVector2) -> StateVector2 {
    let n = v.norm_sqr().sqrt();
    if v.c_plus.norm() > 0.0 {
        let phase = v.c_plus.conj() / v.c_plus.norm();
        StateVector2::new(Complex::new(v.c_plus.norm() / n, 0.0), v.c_minus * phase / n)
    } else {
        StateVector2::new(ZERO, Complex::new(v.c_minus.norm() / n, 0.0))
    }
}

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
pub fn mat_exp(a: &ComplexMatrix2) -> ComplexMatrix2 {
    let norm = a.norm_1();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm >= SCALED_NORM_LIMIT {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let x = *a * 0.5f64.powi(squarings as i32);

    let mut term = ComplexMatrix2::IDENTITY;
    let mut sum = ComplexMatrix2::IDENTITY;
    for k in 1..=TAYLOR_ORDER {
        term = (term * x) * (1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(-i H t / hbar) |psi>`.
pub fn evolve_matrix(psi: &StateVector2, h: &ComplexMatrix2, t: f64, hbar: f64) -> StateVector2 {
    mat_exp(&h.scale(Complex::new(0.0, -t / hbar))).apply(psi)
}

/// `<psi|H|psi>` for Hermitian `H`.
pub fn expectation_matrix(h: &ComplexMatrix2, psi: &StateVector2) -> f64 {
    let z = psi.dot(&h.apply(psi));
    debug_assert!(
        z.im.abs() <= 1e-12 * h.max_abs().max(1.0),
        "expectation of a Hermitian operator has imaginary part {}",
        z.im
    );
    z.re
}

/// `|<u|psi>|^2`.
pub fn probability_matrix(u: &StateVector2, psi: &StateVector2) -> f64 {
    u.dot(psi).norm_sqr()
}

/// `h0 sigma0 + h . sigma`.
pub fn hermitian_from_coeffs(h0: f64, h: [f64; 3]) -> ComplexMatrix2 {
    (0..4).fold(ComplexMatrix2::ZERO, |acc, k| {
        let c = if k == 0 { h0 } else { h[k - 1] };
        acc + sigma(k) * c
    })
}
