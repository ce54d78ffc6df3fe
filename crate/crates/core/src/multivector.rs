//! Multivectors of Cl(3,0) and the geometric product.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rotor::Rotor;
use crate::{Error, Result, Vec3};

/// Blade labels in storage order. This order is part of the serialization format.
pub const BLADE_NAMES: [&str; 8] = ["1", "e1", "e2", "e3", "e23", "e31", "e12", "e123"];

/// Grade of each stored blade.
pub const BLADE_GRADES: [usize; 8] = [0, 1, 1, 1, 2, 2, 2, 3];

/// Below this bivector magnitude `exp_bivector` uses its power series.
pub const EXP_SERIES_THRESHOLD: f64 = 1e-8;

// Each stored blade as a bitmask over (e1, e2, e3) plus the sign relating it to
// the ascending-index product. e31 = e3 e1 = -e1 e3 is the only one with a minus.
const BLADE_MASK: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b110, 0b101, 0b011, 0b111];
const BLADE_SIGN: [i8; 8] = [1, 1, 1, 1, 1, -1, 1, 1];

const fn mask_to_index(mask: u8) -> usize {
    let mut i = 0;
    while i < 8 {
        if BLADE_MASK[i] == mask {
            return i;
        }
        i += 1;
    }
    panic!("unknown blade mask");
}

// Sign from sorting the concatenated generator word a·b into ascending order.
// Repeated generators cancel with e_i^2 = +1, so only transpositions matter.
const fn reorder_sign(a: u8, b: u8) -> i8 {
    let mut swaps = 0u32;
    let mut bit = 0;
    while bit < 3 {
        if a & (1 << bit) != 0 {
            // every generator of b with a smaller index has to move past this one
            swaps += (b & ((1u8 << bit) - 1)).count_ones();
        }
        bit += 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

const fn build_product_table() -> [[(u8, i8); 8]; 8] {
    let mut table = [[(0u8, 0i8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            let (a, b) = (BLADE_MASK[i], BLADE_MASK[j]);
            let k = mask_to_index(a ^ b);
            let sign = BLADE_SIGN[i] * BLADE_SIGN[j] * reorder_sign(a, b) * BLADE_SIGN[k];
            table[i][j] = (k as u8, sign);
            j += 1;
        }
        i += 1;
    }
    table
}

/// `PRODUCT_TABLE[i][j] = (k, s)` means `blade_i * blade_j = s * blade_k`.
pub const PRODUCT_TABLE: [[(u8, i8); 8]; 8] = build_product_table();

/// A general element of Cl(3,0): 8 finite real coefficients in the order of
/// [`BLADE_NAMES`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Multivector {
    c: [f64; 8],
}

impl Multivector {
    pub const ZERO: Self = Self { c: [0.0; 8] };
    pub const ONE: Self = Self::basis(0);
    pub const E1: Self = Self::basis(1);
    pub const E2: Self = Self::basis(2);
    pub const E3: Self = Self::basis(3);
    pub const E23: Self = Self::basis(4);
    pub const E31: Self = Self::basis(5);
    pub const E12: Self = Self::basis(6);
    /// The unit pseudoscalar `e123`, central and squaring to -1.
    pub const I: Self = Self::basis(7);

    const fn basis(index: usize) -> Self {
        let mut c = [0.0; 8];
        c[index] = 1.0;
        Self { c }
    }

    /// Builds a multivector from coefficients in blade order.
    ///
    /// Panics if any coefficient is NaN or infinite; use [`Multivector::try_new`]
    /// for untrusted input.
    pub fn new(c: [f64; 8]) -> Self {
        match Self::try_new(c) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(c: [f64; 8]) -> Result<Self> {
        match c.iter().position(|x| !x.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(Self { c }),
        }
    }

    pub(crate) fn from_raw(c: [f64; 8]) -> Self {
        debug_assert!(c.iter().all(|x| x.is_finite()), "non-finite multivector {c:?}");
        Self { c }
    }

    pub fn scalar(s: f64) -> Self {
        Self::new([s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub fn vector(v: Vec3) -> Self {
        Self::new([0.0, v[0], v[1], v[2], 0.0, 0.0, 0.0, 0.0])
    }

    /// Bivector with the given `e23, e31, e12` coefficients.
    pub fn bivector(b: Vec3) -> Self {
        Self::new([0.0, 0.0, 0.0, 0.0, b[0], b[1], b[2], 0.0])
    }

    pub fn pseudoscalar(p: f64) -> Self {
        Self::new([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, p])
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.c
    }

    pub fn into_coeffs(self) -> [f64; 8] {
        self.c
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    pub fn vector_part(&self) -> Vec3 {
        [self.c[1], self.c[2], self.c[3]]
    }

    pub fn bivector_part(&self) -> Vec3 {
        [self.c[4], self.c[5], self.c[6]]
    }

    pub fn pseudoscalar_part(&self) -> f64 {
        self.c[7]
    }

    /// Geometric product.
    pub fn gp(&self, other: &Self) -> Self {
        let mut out = [0.0; 8];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                let (k, sign) = PRODUCT_TABLE[i][j];
                out[k as usize] += f64::from(sign) * a * b;
            }
        }
        Self::from_raw(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.c.map(|x| s * x))
    }

    /// Projection onto the grade-`k` subspace.
    pub fn grade(&self, k: usize) -> Result<Self> {
        if k > 3 {
            return Err(Error::InvalidGrade(k));
        }
        let mut out = [0.0; 8];
        for (i, x) in self.c.iter().enumerate() {
            if BLADE_GRADES[i] == k {
                out[i] = *x;
            }
        }
        Ok(Self::from_raw(out))
    }

    /// True when every coefficient outside grade `k` is exactly zero.
    pub fn is_grade(&self, k: usize) -> bool {
        self.c
            .iter()
            .zip(BLADE_GRADES)
            .all(|(x, g)| g == k || *x == 0.0)
    }

    /// True when the odd-grade coefficients are exactly zero.
    pub fn is_even(&self) -> bool {
        [1, 2, 3, 7].iter().all(|&i| self.c[i] == 0.0)
    }

    /// Reversion: negates grades 2 and 3.
    pub fn reverse(&self) -> Self {
        let mut out = self.c;
        for x in &mut out[4..] {
            *x = -*x;
        }
        Self::from_raw(out)
    }

    /// Hodge dual, `e123 * a`.
    pub fn hodge_dual(&self) -> Self {
        Self::I.gp(self)
    }

    /// Euclidean norm of the coefficient array.
    pub fn norm(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.gp(other) - other.gp(self)
    }

    /// `(ab - ba)/2`. For two vectors this is their outer product.
    pub fn wedge_vectors(&self, other: &Self) -> Self {
        self.commutator(other).scale(0.5)
    }

    /// Exponential of a pure bivector: `cos|B| + (B/|B|) sin|B|`.
    pub fn exp_bivector(&self) -> Result<Rotor> {
        if let Some(index) = (0..8).find(|&i| BLADE_GRADES[i] != 2 && self.c[i] != 0.0) {
            return Err(Error::NotBivector { index });
        }
        let angle = self.norm();
        let m = if angle < EXP_SERIES_THRESHOLD {
            // B^2 = -|B|^2 is scalar, so the series truncates to closed terms
            let b2 = -angle * angle;
            Self::scalar(1.0 + 0.5 * b2) + self.scale(1.0 + b2 / 6.0)
        } else {
            Self::scalar(angle.cos()) + self.scale(angle.sin() / angle)
        };
        Ok(Rotor::from_unit_even(m))
    }
}

impl Index<usize> for Multivector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.c[index]
    }
}

impl Add for Multivector {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.c;
        for (x, y) in out.iter_mut().zip(rhs.c) {
            *x += y;
        }
        Self::from_raw(out)
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Multivector {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_raw(self.c.map(|x| -x))
    }
}

impl Mul for Multivector {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl fmt::Display for Multivector {
    /// Renders `a + b e1 + ... + h e123`, omitting zero terms. Zero renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let blade = if i == 0 { String::new() } else { format!(" {}", BLADE_NAMES[i]) };
            if first {
                write!(f, "{x}{blade}")?;
            } else if x < 0.0 {
                write!(f, " - {}{blade}", -x)?;
            } else {
                write!(f, " + {x}{blade}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.c.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let c = <[f64; 8]>::deserialize(deserializer)?;
        Self::try_new(c).map_err(serde::de::Error::custom)
    }
}
